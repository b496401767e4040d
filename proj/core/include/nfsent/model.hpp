#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "nfsent/schedule.hpp"

namespace nfsent {

/// Photon energy times wavelength, keV * angstrom.
inline constexpr double kHcKevAngstrom = 12.39842;

/// Nuclear and optical constants of the 14.4 keV Moessbauer transition in 57Fe.
struct PhysConsts {
  double gamma = 1.0 / 141.1;            ///< decay rate, 1/ns
  double transition_energy_kev = 14.413;
  double clebsch_a = std::sqrt(2.0 / 3.0);  ///< Delta m = 0 Clebsch-Gordan coefficient

  /// Carrier wave number in 1/angstrom.
  double wave_number() const {
    return 2.0 * std::numbers::pi * transition_energy_kev / kHcKevAngstrom;
  }

  bool operator==(const PhysConsts&) const = default;
};

/// Hyperfine splitting given as a multiple of the decay rate, in rad/ns.
inline double delta_from_gamma_units(double multiple, const PhysConsts& consts) {
  return multiple * consts.gamma;
}

struct SampleSpec {
  double xi = 1.0;             ///< effective resonant thickness
  double thickness_um = 10.0;
  int n_depth = 201;

  /// Coupling integrated over the slab, eta * L = 6 * Gamma * xi (1/ns).
  double eta_l(double gamma) const { return 6.0 * gamma * xi; }
  /// Coupling per unit length, 1/(ns * um).
  double eta(double gamma) const { return eta_l(gamma) / thickness_um; }

  bool operator==(const SampleSpec&) const = default;
};

enum class PulseMode { impulsive, gaussian };

struct PulseSpec {
  PulseMode mode = PulseMode::impulsive;
  double area = 1e-4;   ///< pulse area theta, dimensionless
  double fwhm_ns = 0.1; ///< gaussian mode only
  double t0_ns = 0.0;   ///< arrival at the front face

  bool operator==(const PulseSpec&) const = default;
};

/// Largest pulse area accepted by the linear-response solver.
inline constexpr double kMaxLinearArea = 1e-3;

struct MirrorSpec {
  bool present = true;
  double reflectivity = 0.99;
  /// Round-trip delay 2d/c; derived from the hyperfine splitting when unset.
  std::optional<double> delay_ns;
  /// Instant (at the mirror plane) after which nothing is reflected.
  double disable_time_ns = 7.39;

  bool operator==(const MirrorSpec&) const = default;
};

struct DetectorSpec {
  /// Apply the sqrt(1-R) amplitude transmission to the forward detector while the mirror is in the beam.
  bool attenuate_forward = true;

  bool operator==(const DetectorSpec&) const = default;
};

struct ScenarioConfig {
  std::string name = "custom";
  PhysConsts consts;
  SampleSpec sample;
  PulseSpec pulse;
  MirrorSpec mirror;
  DetectorSpec detector;
  HyperfineSchedule schedule;
  double t_end_ns = 200.0;
  double dt_ns = 0.005;
  std::vector<double> snapshot_times_ns;

  bool operator==(const ScenarioConfig&) const = default;
};

/// Protocol instants that follow from the hyperfine splitting alone.
struct ProtocolTimings {
  double tau;       ///< mirror round trip, pi / delta_B
  double t_invert;  ///< first beat node, pi / (2 delta_B)
  double t_off;     ///< second beat node, 3 pi / (2 delta_B)
};

ProtocolTimings derived_timings(double delta_b);

/// A scenario whose invariants have been checked and whose derived quantities are filled in.
/// Only validate_scenario() constructs one.
class ValidatedScenario {
 public:
  const ScenarioConfig& config() const { return config_; }

  double tau() const { return *config_.mirror.delay_ns; }
  double eta_l() const { return config_.sample.eta_l(config_.consts.gamma); }
  double wave_number() const { return config_.consts.wave_number(); }
  /// Magnitude of the first nonzero hyperfine level, 0 if the field is never on.
  double reference_delta_b() const { return reference_delta_b_; }
  std::size_t n_steps() const { return n_steps_; }

  bool operator==(const ValidatedScenario&) const = default;

 private:
  friend ValidatedScenario validate_scenario(const ScenarioConfig& config);
  ValidatedScenario() = default;

  ScenarioConfig config_;
  double reference_delta_b_ = 0.0;
  std::size_t n_steps_ = 0;
};

/// Checks every scenario invariant, throwing InvalidInput naming the offending field.
ValidatedScenario validate_scenario(const ScenarioConfig& config);
inline ValidatedScenario validate_scenario(const ValidatedScenario& scenario) {
  return validate_scenario(scenario.config());
}

}  // namespace nfsent
