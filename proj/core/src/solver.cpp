#include "nfsent/solver.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>

#include "nfsent/config.hpp"
#include "nfsent/errors.hpp"

namespace nfsent {

// ---------------------------------------------------------------------------
// Mirror delay line

void MirrorDelayLine::push(double t, Complex value) {
  if (!samples_.empty() && t < samples_.back().t) {
    throw InvalidInput("MirrorDelayLine::push: time went backwards");
  }
  samples_.push_back({t, value});
}

std::optional<MirrorDelayLine::Complex> MirrorDelayLine::sample(double t) const {
  if (samples_.empty() || t < samples_.front().t) return std::nullopt;
  if (t >= samples_.back().t) return samples_.back().value;
  auto hi = std::upper_bound(samples_.begin(), samples_.end(), t,
                             [](double v, const Sample& s) { return v < s.t; });
  auto lo = std::prev(hi);
  const double span = hi->t - lo->t;
  if (span <= 0.0) return hi->value;
  const double w = (t - lo->t) / span;
  return lo->value + w * (hi->value - lo->value);
}

void MirrorDelayLine::discard_before(double t) {
  while (samples_.size() > 2 && samples_[1].t <= t) samples_.pop_front();
}

// ---------------------------------------------------------------------------
// State and elementary updates

namespace {

// Plain product; skips the inf/nan recovery of operator* in the inner loops.
inline Complex mul(Complex x, Complex y) {
  return {x.real() * y.real() - x.imag() * y.imag(), x.real() * y.imag() + x.imag() * y.real()};
}

}  // namespace

SolverState init_state(const ValidatedScenario& scenario) {
  const auto n = static_cast<std::size_t>(scenario.config().sample.n_depth);
  SolverState s;
  s.f31.assign(n, Complex{});
  s.f42.assign(n, Complex{});
  s.b31.assign(n, Complex{});
  s.b42.assign(n, Complex{});
  s.omega_f.assign(n, Complex{});
  s.omega_b.assign(n, Complex{});
  return s;
}

void apply_impulse(SolverState& state, Direction direction, double area, double clebsch_a) {
  const Complex kick{0.0, clebsch_a / 4.0 * area};
  auto& c31 = direction == Direction::forward ? state.f31 : state.b31;
  auto& c42 = direction == Direction::forward ? state.f42 : state.b42;
  for (auto& c : c31) c += kick;
  for (auto& c : c42) c += kick;
}

BlochPropagator::BlochPropagator(double dt, double delta_b, double gamma, double clebsch_a)
    : dt_(dt), delta_b_(delta_b) {
  const Complex lambda31{-gamma / 2.0, -delta_b};
  const Complex lambda42{-gamma / 2.0, delta_b};
  decay31_ = std::exp(lambda31 * dt);
  decay42_ = std::exp(lambda42 * dt);
  const Complex coupling{0.0, clebsch_a / 4.0};
  drive31_ = coupling * (decay31_ - 1.0) / lambda31;
  drive42_ = coupling * (decay42_ - 1.0) / lambda42;
}

void BlochPropagator::advance(std::span<Complex> c31, std::span<Complex> c42,
                              std::span<const Complex> omega) const {
  const std::size_t n = c31.size();
  for (std::size_t i = 0; i < n; ++i) {
    c31[i] = mul(decay31_, c31[i]) + mul(drive31_, omega[i]);
    c42[i] = mul(decay42_, c42[i]) + mul(drive42_, omega[i]);
  }
}

void bloch_step(SolverState& state, double dt, double delta_b, const PhysConsts& consts) {
  const BlochPropagator prop(dt, delta_b, consts.gamma, consts.clebsch_a);
  prop.advance(state.f31, state.f42, state.omega_f);
  prop.advance(state.b31, state.b42, state.omega_b);
  state.t += dt;
}

void sweep_forward(std::span<const Complex> c31, std::span<const Complex> c42, Complex omega_in,
                   double eta_l, double clebsch_a, std::span<Complex> omega_out) {
  const std::size_t n = c31.size();
  const double du = 1.0 / static_cast<double>(n - 1);
  const Complex k{0.0, eta_l * clebsch_a * du / 2.0};
  omega_out[0] = omega_in;
  Complex prev = c31[0] + c42[0];
  for (std::size_t i = 1; i < n; ++i) {
    const Complex cur = c31[i] + c42[i];
    omega_out[i] = omega_out[i - 1] + mul(k, prev + cur);
    prev = cur;
  }
}

void sweep_backward(std::span<const Complex> c31, std::span<const Complex> c42, Complex omega_in,
                    double eta_l, double clebsch_a, std::span<Complex> omega_out) {
  const std::size_t n = c31.size();
  const double du = 1.0 / static_cast<double>(n - 1);
  const Complex k{0.0, eta_l * clebsch_a * du / 2.0};
  omega_out[n - 1] = omega_in;
  Complex prev = c31[n - 1] + c42[n - 1];
  for (std::size_t i = n - 1; i-- > 0;) {
    const Complex cur = c31[i] + c42[i];
    omega_out[i] = omega_out[i + 1] + mul(k, prev + cur);
    prev = cur;
  }
}

void field_sweep(SolverState& state, Complex omega_f_in, Complex omega_b_in, double eta_l,
                 double clebsch_a) {
  sweep_forward(state.f31, state.f42, omega_f_in, eta_l, clebsch_a, state.omega_f);
  sweep_backward(state.b31, state.b42, omega_b_in, eta_l, clebsch_a, state.omega_b);
}

bool mirror_reflects(double t_exit, const MirrorSpec& mirror) {
  if (!mirror.present || mirror.reflectivity <= 0.0) return false;
  return t_exit + mirror.delay_ns.value_or(0.0) / 2.0 <= mirror.disable_time_ns;
}

bool mirror_in_beam(double t, const MirrorSpec& mirror) {
  return mirror.present && t < mirror.disable_time_ns;
}

Complex mirror_feedback(const MirrorDelayLine& buffer, double t, const MirrorSpec& mirror) {
  const double tau = mirror.delay_ns.value_or(0.0);
  const double t_exit = t - tau;
  if (t_exit < 0.0 || !mirror_reflects(t_exit, mirror)) return {};
  const auto past = buffer.sample(t_exit);
  if (!past) return {};
  return -std::sqrt(mirror.reflectivity) * *past;
}

Complex gaussian_input(double t, const PulseSpec& pulse) {
  const double sigma = pulse.fwhm_ns / (2.0 * std::sqrt(2.0 * std::numbers::ln2));
  const double x = (t - pulse.t0_ns) / sigma;
  const double norm = pulse.area / (sigma * std::sqrt(2.0 * std::numbers::pi));
  return {norm * std::exp(-0.5 * x * x), 0.0};
}

// ---------------------------------------------------------------------------
// Time loop

namespace {

class Integrator {
 public:
  explicit Integrator(const ValidatedScenario& scenario)
      : cfg_(scenario.config()),
        eta_l_(scenario.eta_l()),
        a_(cfg_.consts.clebsch_a),
        dt_(cfg_.dt_ns),
        schedule_(cfg_.schedule.aligned_to(cfg_.dt_ns, &diag_.nudges)),
        state_(init_state(scenario)),
        scratch_(state_) {
    diag_.steps = scenario.n_steps();
    const auto& pulse = cfg_.pulse;
    if (pulse.mode == PulseMode::impulsive) {
      forward_kick_step_ = static_cast<long long>(std::llround(pulse.t0_ns / dt_));
      if (mirror_reflects(pulse.t0_ns, cfg_.mirror)) {
        // First grid point at or after the return of the prompt keeps the backward trace causal.
        const double t_back = pulse.t0_ns + scenario.tau();
        backward_kick_step_ = static_cast<long long>(std::ceil(t_back / dt_ - 1e-9));
      }
    }
  }

  RunResult run() {
    RunResult out;
    const std::size_t n_steps = diag_.steps;
    auto& tr = out.traces;
    tr.t_ns.reserve(n_steps + 1);
    tr.fwd_amp.reserve(n_steps + 1);
    tr.bwd_amp.reserve(n_steps + 1);
    tr.fwd_detected.reserve(n_steps + 1);
    tr.mirror_in_beam.reserve(n_steps + 1);
    tr.config_hash = scenario_hash(cfg_);

    std::map<std::size_t, std::size_t> snapshot_steps;  // step -> count requested
    for (double t : cfg_.snapshot_times_ns) {
      ++snapshot_steps[static_cast<std::size_t>(std::llround(t / dt_))];
    }

    const double transmission = std::sqrt(1.0 - cfg_.mirror.reflectivity);
    for (std::size_t n = 0;; ++n) {
      const double t = static_cast<double>(n) * dt_;
      state_.t = t;
      apply_kicks(static_cast<long long>(n), t);
      solve_fields(state_, t, /*record=*/true);
      check_finite(n, t);

      const Complex fwd = state_.omega_f.back();
      const Complex bwd = state_.omega_b.front();
      const bool in_beam = mirror_in_beam(t, cfg_.mirror);
      tr.t_ns.push_back(t);
      tr.fwd_amp.push_back(fwd);
      tr.bwd_amp.push_back(bwd);
      tr.fwd_detected.push_back(in_beam && cfg_.detector.attenuate_forward ? transmission * fwd
                                                                           : fwd);
      tr.mirror_in_beam.push_back(in_beam ? 1 : 0);

      if (auto it = snapshot_steps.find(n); it != snapshot_steps.end()) {
        for (std::size_t k = 0; k < it->second; ++k) {
          out.snapshots.push_back({t, state_.f31, state_.f42, state_.b31, state_.b42});
        }
      }
      if (n == n_steps) break;
      step(t);
    }
    diag_.max_field_over_gamma = max_field_ / cfg_.consts.gamma;
    diag_.linear_regime_warning = diag_.max_field_over_gamma > 0.1;
    out.diagnostics = diag_;
    return out;
  }

 private:
  void apply_kicks(long long n, double t) {
    if (n == forward_kick_step_) {
      apply_impulse(state_, Direction::forward, cfg_.pulse.area, a_);
      diag_.forward_kick_ns = t;
    }
    if (n == backward_kick_step_) {
      apply_impulse(state_, Direction::backward,
                    -std::sqrt(cfg_.mirror.reflectivity) * cfg_.pulse.area, a_);
      diag_.backward_kick_ns = t;
    }
  }

  Complex input_field(double t) const {
    return cfg_.pulse.mode == PulseMode::gaussian ? gaussian_input(t, cfg_.pulse) : Complex{};
  }

  // The forward sweep is independent of the backward branch, so the rear-face value can be
  // stored before the (possibly zero-delay) feedback is read.
  void solve_fields(SolverState& s, double t, bool record) {
    sweep_forward(s.f31, s.f42, input_field(t), eta_l_, a_, s.omega_f);
    if (record) {
      state_.mirror_buffer.push(t, s.omega_f.back());
      state_.mirror_buffer.discard_before(t - cfg_.mirror.delay_ns.value_or(0.0) - 2.0 * dt_);
    }
    const Complex feedback = mirror_feedback(state_.mirror_buffer, t, cfg_.mirror);
    sweep_backward(s.b31, s.b42, feedback, eta_l_, a_, s.omega_b);
    if (record) {
      for (const auto& w : s.omega_f) max_field_ = std::max(max_field_, std::abs(w));
      for (const auto& w : s.omega_b) max_field_ = std::max(max_field_, std::abs(w));
    }
  }

  const BlochPropagator& propagator(double dt, double delta_b, std::optional<BlochPropagator>& cache) {
    if (!cache || cache->delta_b() != delta_b || cache->dt() != dt) {
      cache.emplace(dt, delta_b, cfg_.consts.gamma, a_);
    }
    return *cache;
  }

  // Exponential midpoint step: predict the coherences at t + dt/2 with the fields frozen at t,
  // solve the fields there, then take the full step with the midpoint fields.
  void step(double t) {
    const double t_half = t + dt_ / 2.0;
    const double delta_b = schedule_.level_at(t_half);
    const auto& half = propagator(dt_ / 2.0, delta_b, half_cache_);
    const auto& full = propagator(dt_, delta_b, full_cache_);

    scratch_.f31 = state_.f31;
    scratch_.f42 = state_.f42;
    scratch_.b31 = state_.b31;
    scratch_.b42 = state_.b42;
    half.advance(scratch_.f31, scratch_.f42, state_.omega_f);
    half.advance(scratch_.b31, scratch_.b42, state_.omega_b);
    solve_fields(scratch_, t_half, /*record=*/false);

    full.advance(state_.f31, state_.f42, scratch_.omega_f);
    full.advance(state_.b31, state_.b42, scratch_.omega_b);
  }

  void check_finite(std::size_t n, double t) const {
    auto bad = [](const Complex& c) { return !std::isfinite(c.real()) || !std::isfinite(c.imag()); };
    bool ok = !bad(state_.omega_f.back()) && !bad(state_.omega_b.front());
    if (ok && n % 256 == 0) {
      for (const auto* v : {&state_.f31, &state_.f42, &state_.b31, &state_.b42}) {
        ok = ok && std::none_of(v->begin(), v->end(), bad);
      }
    }
    if (!ok) {
      throw NumericalFailure("non-finite solver state at t = " + std::to_string(t) + " ns", t);
    }
  }

  const ScenarioConfig& cfg_;
  double eta_l_;
  double a_;
  double dt_;
  RunDiagnostics diag_;
  HyperfineSchedule schedule_;
  SolverState state_;
  SolverState scratch_;
  std::optional<BlochPropagator> half_cache_, full_cache_;
  long long forward_kick_step_ = -1;
  long long backward_kick_step_ = -1;
  double max_field_ = 0.0;
};

}  // namespace

RunResult run_scenario(const ValidatedScenario& scenario) {
  return Integrator(scenario).run();
}

}  // namespace nfsent
