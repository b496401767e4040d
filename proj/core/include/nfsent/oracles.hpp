#pragma once

#include <complex>
#include <span>
#include <string>
#include <vector>

// Closed-form reference responses. Nothing here depends on the solver.
namespace nfsent::oracles {

using Complex = std::complex<double>;

struct OracleCurve {
  std::vector<double> t_ns;
  std::vector<Complex> amplitude;
  std::string provenance;
};

/// Single-pass forward field per unit pulse area in the thin-sample limit:
/// -2 xi Gamma exp(-Gamma t / 2) cos(delta_B t). Zero for t < 0.
Complex first_order_amplitude(double xi, double gamma, double delta_b, double t);

OracleCurve first_order_curve(double xi, double gamma, double delta_b, std::span<const double> t_ns,
                              double area = 1.0);

/// Rough attenuation of a thin sample over one mirror delay, exp(-pi xi Gamma / delta_B).
double envelope_attenuation(double xi, double gamma, double delta_b);

/// Backward-to-forward energy ratio expected after retrieval, R / envelope_attenuation.
double predicted_balance(double reflectivity, double xi, double gamma, double delta_b);

/// ||trace - reference|| / ||reference|| over the samples of `trace` inside [t1, t2]; the reference
/// is linearly interpolated onto those instants. Throws InvalidInput on a zero-norm reference or
/// an empty window.
double relative_l2(std::span<const double> trace_t, std::span<const Complex> trace,
                   std::span<const double> reference_t, std::span<const Complex> reference,
                   double t1, double t2);

}  // namespace nfsent::oracles
