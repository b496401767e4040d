#include "nfsent/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "nfsent/errors.hpp"

namespace nfsent::oracles {

Complex first_order_amplitude(double xi, double gamma, double delta_b, double t) {
  if (t < 0.0) return {};
  return {-2.0 * xi * gamma * std::exp(-gamma * t / 2.0) * std::cos(delta_b * t), 0.0};
}

OracleCurve first_order_curve(double xi, double gamma, double delta_b, std::span<const double> t_ns,
                              double area) {
  OracleCurve c;
  c.t_ns.assign(t_ns.begin(), t_ns.end());
  c.amplitude.reserve(t_ns.size());
  for (double t : t_ns) c.amplitude.push_back(area * first_order_amplitude(xi, gamma, delta_b, t));
  c.provenance = "first Born term, single pass, impulsive drive";
  return c;
}

double envelope_attenuation(double xi, double gamma, double delta_b) {
  if (!(delta_b > 0.0)) throw InvalidInput("envelope_attenuation: delta_b must be > 0");
  return std::exp(-std::numbers::pi * xi * gamma / delta_b);
}

double predicted_balance(double reflectivity, double xi, double gamma, double delta_b) {
  return reflectivity / envelope_attenuation(xi, gamma, delta_b);
}

double relative_l2(std::span<const double> trace_t, std::span<const Complex> trace,
                   std::span<const double> reference_t, std::span<const Complex> reference,
                   double t1, double t2) {
  if (trace_t.size() != trace.size() || reference_t.size() != reference.size()) {
    throw InvalidInput("relative_l2: time and value arrays differ in length");
  }
  if (reference_t.empty()) throw InvalidInput("relative_l2: empty reference");

  auto interp = [&](double t) -> Complex {
    if (t <= reference_t.front()) return reference.front();
    if (t >= reference_t.back()) return reference.back();
    const auto hi = std::upper_bound(reference_t.begin(), reference_t.end(), t);
    const auto i = static_cast<std::size_t>(std::distance(reference_t.begin(), hi));
    const double w = (t - reference_t[i - 1]) / (reference_t[i] - reference_t[i - 1]);
    return reference[i - 1] + w * (reference[i] - reference[i - 1]);
  };

  double diff = 0.0;
  double norm = 0.0;
  std::size_t count = 0;
  for (std::size_t i = 0; i < trace_t.size(); ++i) {
    if (trace_t[i] < t1 || trace_t[i] > t2) continue;
    const Complex r = interp(trace_t[i]);
    diff += std::norm(trace[i] - r);
    norm += std::norm(r);
    ++count;
  }
  if (count == 0) throw InvalidInput("relative_l2: no samples inside the window");
  if (norm == 0.0) throw InvalidInput("relative_l2: reference has zero norm in the window");
  return std::sqrt(diff / norm);
}

}  // namespace nfsent::oracles
