#include "nfsent/model.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "nfsent/errors.hpp"

namespace nfsent {

namespace {

void require(bool ok, const std::string& message) {
  if (!ok) throw InvalidInput(message);
}

bool finite(double v) { return std::isfinite(v); }

}  // namespace

ProtocolTimings derived_timings(double delta_b) {
  if (!(delta_b > 0.0) || !std::isfinite(delta_b)) {
    throw InvalidInput("delta_b must be positive and finite, got " + std::to_string(delta_b));
  }
  constexpr double pi = std::numbers::pi;
  return ProtocolTimings{pi / delta_b, pi / (2.0 * delta_b), 3.0 * pi / (2.0 * delta_b)};
}

ValidatedScenario validate_scenario(const ScenarioConfig& config) {
  const auto& c = config.consts;
  require(finite(c.gamma) && c.gamma > 0.0, "consts.gamma must be > 0");
  require(finite(c.transition_energy_kev) && c.transition_energy_kev > 0.0,
          "consts.transition_energy_kev must be > 0");
  require(std::abs(c.clebsch_a - std::sqrt(2.0 / 3.0)) <= 1e-12,
          "consts.clebsch_a must equal sqrt(2/3) for the Delta m = 0 transitions");

  const auto& s = config.sample;
  require(finite(s.xi) && s.xi >= 0.0, "sample.xi must be >= 0");
  require(finite(s.thickness_um) && s.thickness_um > 0.0, "sample.thickness_um must be > 0");
  require(s.n_depth >= 2, "sample.n_depth must be >= 2");

  require(finite(config.dt_ns) && config.dt_ns > 0.0, "dt_ns must be > 0");
  require(finite(config.t_end_ns) && config.t_end_ns > config.dt_ns, "t_end_ns must exceed dt_ns");

  const auto& p = config.pulse;
  require(finite(p.area) && p.area > 0.0, "pulse.area must be > 0");
  require(p.area <= kMaxLinearArea,
          "pulse.area must be <= 1e-3 (the solver is restricted to the linear regime)");
  require(finite(p.t0_ns) && p.t0_ns >= 0.0 && p.t0_ns < config.t_end_ns,
          "pulse.t0_ns must lie in [0, t_end_ns)");
  if (p.mode == PulseMode::gaussian) {
    require(finite(p.fwhm_ns) && p.fwhm_ns > 0.0, "pulse.fwhm_ns must be > 0 in gaussian mode");
    require(config.dt_ns <= p.fwhm_ns / 5.0,
            "dt_ns must be <= pulse.fwhm_ns / 5 to resolve the gaussian pulse");
  }

  const double max_level = config.schedule.max_abs_level();
  if (max_level > 0.0) {
    require(config.dt_ns <= 1.0 / (20.0 * max_level),
            "dt_ns too coarse for the hyperfine beat: need dt_ns <= 1/(20 max|delta_b|) = " +
                std::to_string(1.0 / (20.0 * max_level)) + " ns");
  }

  ValidatedScenario out;
  out.config_ = config;
  out.reference_delta_b_ = std::abs(config.schedule.first_nonzero_level().value_or(0.0));

  auto& m = out.config_.mirror;
  require(finite(m.reflectivity) && m.reflectivity >= 0.0 && m.reflectivity <= 1.0,
          "mirror.reflectivity must lie in [0, 1]");
  require(finite(m.disable_time_ns), "mirror.disable_time_ns must be finite");
  if (m.delay_ns) {
    require(finite(*m.delay_ns) && *m.delay_ns >= 0.0, "mirror.delay_ns must be >= 0");
  } else if (out.reference_delta_b_ > 0.0) {
    m.delay_ns = derived_timings(out.reference_delta_b_).tau;
  } else {
    require(!m.present, "mirror.delay_ns is unset and cannot be derived: the field is never on");
    m.delay_ns = 0.0;
  }

  for (double t : config.snapshot_times_ns) {
    require(finite(t) && t >= 0.0 && t <= config.t_end_ns,
            "snapshot_times_ns entries must lie in [0, t_end_ns]");
  }

  out.n_steps_ = static_cast<std::size_t>(std::llround(config.t_end_ns / config.dt_ns));
  return out;
}

}  // namespace nfsent
