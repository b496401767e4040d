#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "nfsent/delay_line.hpp"
#include "nfsent/model.hpp"

namespace nfsent {

using Complex = std::complex<double>;
using ComplexProfile = std::vector<Complex>;

/// Coherences and fields on the depth grid u = y/L in [0, 1].
/// f.. are the forward envelopes (multiplying e^{iky}), b.. the backward ones (e^{-iky}).
/// Fields are Rabi frequencies in rad/ns.
struct SolverState {
  double t = 0.0;
  ComplexProfile f31, f42, b31, b42;
  ComplexProfile omega_f, omega_b;
  MirrorDelayLine mirror_buffer;

  std::size_t n_depth() const { return f31.size(); }
  bool operator==(const SolverState&) const = default;
};

SolverState init_state(const ValidatedScenario& scenario);

enum class Direction { forward, backward };

/// Coherence kick left behind by a pulse much shorter than 1/delta_B: adds i(a/4)*area to both
/// coherences of the chosen branch at every depth. The pulse itself passes unattenuated.
void apply_impulse(SolverState& state, Direction direction, double area,
                   double clebsch_a = std::sqrt(2.0 / 3.0));

/// Exact solution of d/dt c31 = -(G/2 + i D) c31 + i(a/4) W and d/dt c42 = -(G/2 - i D) c42 +
/// i(a/4) W over one step of length dt with the drive W held constant.
class BlochPropagator {
 public:
  BlochPropagator(double dt, double delta_b, double gamma, double clebsch_a);

  void advance(std::span<Complex> c31, std::span<Complex> c42,
               std::span<const Complex> omega) const;

  double dt() const { return dt_; }
  double delta_b() const { return delta_b_; }

 private:
  double dt_;
  double delta_b_;
  Complex decay31_, decay42_;
  Complex drive31_, drive42_;
};

/// Advances all four coherence profiles by dt using the state's current field profiles as a
/// constant drive, and advances state.t.
void bloch_step(SolverState& state, double dt, double delta_b, const PhysConsts& consts);

/// Quasi-static field solve across the slab:
///   omega_f(u) = omega_f(0) + i eta_l a int_0^u (f31 + f42),
///   omega_b(u) = omega_b(1) + i eta_l a int_u^1 (b31 + b42),
/// trapezoidal quadrature on the uniform depth grid.
void sweep_forward(std::span<const Complex> c31, std::span<const Complex> c42, Complex omega_in,
                   double eta_l, double clebsch_a, std::span<Complex> omega_out);
void sweep_backward(std::span<const Complex> c31, std::span<const Complex> c42, Complex omega_in,
                    double eta_l, double clebsch_a, std::span<Complex> omega_out);
void field_sweep(SolverState& state, Complex omega_f_in, Complex omega_b_in, double eta_l,
                 double clebsch_a);

/// True if a field leaving the rear face at t_exit meets the mirror while it still reflects.
bool mirror_reflects(double t_exit, const MirrorSpec& mirror);
/// Forward detector flag: the mirror is still in the beam at trace time t.
bool mirror_in_beam(double t, const MirrorSpec& mirror);

/// Backward boundary value omega_b(t, u=1) = -sqrt(R) omega_f(t - tau, u=1) when the delayed field
/// was reflected, else 0. `mirror.delay_ns` must be resolved.
Complex mirror_feedback(const MirrorDelayLine& buffer, double t, const MirrorSpec& mirror);

/// Gaussian input field of total area `pulse.area` and the given FWHM, centred at t0.
Complex gaussian_input(double t, const PulseSpec& pulse);

/// Detector records on the uniform time grid, fields referenced to the sample faces.
struct TraceSet {
  std::vector<double> t_ns;
  std::vector<Complex> fwd_amp;       ///< omega_f(t, L)
  std::vector<Complex> bwd_amp;       ///< omega_b(t, 0)
  std::vector<Complex> fwd_detected;  ///< fwd_amp after the mirror transmission
  std::vector<std::uint8_t> mirror_in_beam;
  std::string config_hash;

  std::size_t size() const { return t_ns.size(); }
};

struct CoherenceSnapshot {
  double t_ns = 0.0;
  ComplexProfile f31, f42, b31, b42;
};

struct RunDiagnostics {
  std::size_t steps = 0;
  double max_field_over_gamma = 0.0;
  bool linear_regime_warning = false;  ///< some |omega| exceeded 0.1 Gamma
  std::vector<ScheduleNudge> nudges;
  double forward_kick_ns = -1.0;   ///< negative when no kick was applied
  double backward_kick_ns = -1.0;
};

struct RunResult {
  TraceSet traces;
  std::vector<CoherenceSnapshot> snapshots;
  RunDiagnostics diagnostics;
};

/// Integrates the scenario over [0, t_end]. Deterministic for a fixed config.
/// Throws NumericalFailure if the state becomes non-finite.
RunResult run_scenario(const ValidatedScenario& scenario);

}  // namespace nfsent
