#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "nfsent/analysis.hpp"
#include "nfsent/presets.hpp"
#include "nfsent/solver.hpp"

namespace nfsent {

/// Storage window read off a schedule: the first switch-off after t = 0 and the next switch-on.
struct StorageWindow {
  double t_off;
  double t_on;
};
std::optional<StorageWindow> find_storage_window(const HyperfineSchedule& schedule);

struct PatternSummary {
  double t_ns;
  double peak_position_angstrom;
  std::optional<double> modulation_period_angstrom;
  double contrast;
};

/// Observables of one run.
struct RunReport {
  std::string config_hash;
  std::optional<StorageWindow> storage;
  std::optional<EntanglementReport> entanglement;  ///< over [t_on, t_end]
  std::optional<double> storage_suppression;
  std::optional<double> beat_period_ns;            ///< forward intensity before storage
  std::vector<PatternSummary> patterns;
  RunDiagnostics diagnostics;
};

RunReport analyze_run(const ValidatedScenario& scenario, const RunResult& result);
nlohmann::json to_json(const RunReport& report);

enum class SweepAxis { xi, reflectivity, delta_b, tau };
std::optional<SweepAxis> parse_sweep_axis(std::string_view name);
const char* to_string(SweepAxis axis);

struct SweepSpec {
  SweepAxis axis = SweepAxis::xi;
  std::vector<double> values;
  std::string base_preset = "fig2b";
  PresetParams base;
};

struct SweepRow {
  double value = 0.0;
  bool ok = false;
  std::string error;
  double balance = 0.0;
  double mean_phase = 0.0;
  std::string classification;
  std::optional<double> suppression;
  double predicted_balance = 0.0;
};

/// Runs every value (concurrently when `parallel`), returning rows in input order. A failed run
/// yields a row with ok = false; the sweep continues.
std::vector<SweepRow> run_sweep(const SweepSpec& spec, bool parallel = true);

/// The scenario a sweep evaluates for one value.
ScenarioConfig sweep_scenario(const SweepSpec& spec, double value);

void write_sweep_csv(std::ostream& out, const SweepSpec& spec, const std::vector<SweepRow>& rows);

}  // namespace nfsent
