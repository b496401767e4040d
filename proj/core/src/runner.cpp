#include "nfsent/runner.hpp"

#include <algorithm>
#include <cstdio>
#include <future>
#include <thread>

#include "nfsent/errors.hpp"
#include "nfsent/oracles.hpp"

namespace nfsent {

using nlohmann::json;

std::optional<StorageWindow> find_storage_window(const HyperfineSchedule& schedule) {
  const auto segs = schedule.segments();
  for (std::size_t i = 1; i < segs.size(); ++i) {
    if (segs[i].delta_b != 0.0 || segs[i - 1].delta_b == 0.0) continue;
    for (std::size_t j = i + 1; j < segs.size(); ++j) {
      if (segs[j].delta_b != 0.0) return StorageWindow{segs[i].t_start, segs[j].t_start};
    }
    return std::nullopt;
  }
  return std::nullopt;
}

RunReport analyze_run(const ValidatedScenario& scenario, const RunResult& result) {
  const auto& cfg = scenario.config();
  const auto& tr = result.traces;
  RunReport r;
  r.config_hash = tr.config_hash;
  r.diagnostics = result.diagnostics;
  r.storage = find_storage_window(cfg.schedule.aligned_to(cfg.dt_ns));

  const double t_end = tr.t_ns.back();
  const double retrieval_start = r.storage ? r.storage->t_on : 0.0;
  if (retrieval_start < t_end) r.entanglement = entanglement_report(tr, retrieval_start, t_end);

  if (r.storage) {
    try {
      r.storage_suppression = storage_suppression(tr, r.storage->t_off, r.storage->t_on);
    } catch (const InvalidInput&) {
    }
  }

  std::vector<double> i_fwd(tr.size());
  for (std::size_t i = 0; i < tr.size(); ++i) i_fwd[i] = std::norm(tr.fwd_amp[i]);
  try {
    r.beat_period_ns = beat_period(tr.t_ns, i_fwd, 0.0, r.storage ? r.storage->t_off : t_end);
  } catch (const InvalidInput&) {
  }

  for (const auto& snap : result.snapshots) {
    try {
      const auto pattern = excitation_pattern(snap, scenario.wave_number());
      r.patterns.push_back({snap.t_ns, pattern_peak_position(pattern),
                            pattern_modulation_period(pattern), pattern_contrast(pattern)});
    } catch (const InvalidInput&) {
    }
  }
  return r;
}

namespace {

json optional_number(const std::optional<double>& v) {
  return v && std::isfinite(*v) ? json(*v) : json(nullptr);
}

}  // namespace

json to_json(const RunReport& r) {
  json j{{"config_hash", r.config_hash}};
  j["storage_window"] =
      r.storage ? json{{"t_off_ns", r.storage->t_off}, {"t_on_ns", r.storage->t_on}} : json(nullptr);
  if (r.entanglement) {
    const auto& e = *r.entanglement;
    j["entanglement"] = {{"window_ns", {e.t1, e.t2}},
                         {"balance", optional_number(e.balance)},
                         {"mean_phase", e.mean_phase},
                         {"phase_spread", e.phase_spread},
                         {"classification", to_string(e.classification)}};
    j["classification"] = to_string(e.classification);
  } else {
    j["entanglement"] = nullptr;
    j["classification"] = "indeterminate";
  }
  j["storage_suppression"] = optional_number(r.storage_suppression);
  j["beat_period_ns"] = optional_number(r.beat_period_ns);
  json patterns = json::array();
  for (const auto& p : r.patterns) {
    patterns.push_back({{"t_ns", p.t_ns},
                        {"peak_position_angstrom", p.peak_position_angstrom},
                        {"modulation_period_angstrom", optional_number(p.modulation_period_angstrom)},
                        {"contrast", p.contrast}});
  }
  j["patterns"] = patterns;
  json nudges = json::array();
  for (const auto& n : r.diagnostics.nudges) {
    nudges.push_back({{"requested_ns", n.requested_ns}, {"applied_ns", n.applied_ns}});
  }
  j["diagnostics"] = {{"steps", r.diagnostics.steps},
                      {"max_field_over_gamma", r.diagnostics.max_field_over_gamma},
                      {"linear_regime_warning", r.diagnostics.linear_regime_warning},
                      {"forward_kick_ns", r.diagnostics.forward_kick_ns},
                      {"backward_kick_ns", r.diagnostics.backward_kick_ns},
                      {"schedule_nudges", nudges}};
  return j;
}

std::optional<SweepAxis> parse_sweep_axis(std::string_view name) {
  if (name == "xi") return SweepAxis::xi;
  if (name == "R" || name == "reflectivity") return SweepAxis::reflectivity;
  if (name == "delta_B" || name == "delta_b") return SweepAxis::delta_b;
  if (name == "tau") return SweepAxis::tau;
  return std::nullopt;
}

const char* to_string(SweepAxis axis) {
  switch (axis) {
    case SweepAxis::xi: return "xi";
    case SweepAxis::reflectivity: return "R";
    case SweepAxis::delta_b: return "delta_B";
    case SweepAxis::tau: return "tau";
  }
  return "?";
}

ScenarioConfig sweep_scenario(const SweepSpec& spec, double value) {
  PresetParams p = spec.base;
  switch (spec.axis) {
    case SweepAxis::xi: p.xi = value; break;
    case SweepAxis::reflectivity: p.reflectivity = value; break;
    case SweepAxis::delta_b: p.delta_b_in_gamma = value; break;  // in units of Gamma
    case SweepAxis::tau: p.tau_ns = value; break;
  }
  return make_preset(spec.base_preset, p);
}

namespace {

SweepRow evaluate(const SweepSpec& spec, double value) {
  SweepRow row;
  row.value = value;
  try {
    const auto scenario = validate_scenario(sweep_scenario(spec, value));
    const auto result = run_scenario(scenario);
    const auto report = analyze_run(scenario, result);
    const auto& cfg = scenario.config();
    row.predicted_balance = oracles::predicted_balance(
        cfg.mirror.present ? cfg.mirror.reflectivity : 0.0, cfg.sample.xi, cfg.consts.gamma,
        scenario.reference_delta_b());
    if (report.entanglement) {
      row.balance = report.entanglement->balance;
      row.mean_phase = report.entanglement->mean_phase;
      row.classification = to_string(report.entanglement->classification);
    } else {
      row.classification = "indeterminate";
    }
    row.suppression = report.storage_suppression;
    row.ok = true;
  } catch (const std::exception& e) {
    row.ok = false;
    row.error = e.what();
  }
  return row;
}

}  // namespace

std::vector<SweepRow> run_sweep(const SweepSpec& spec, bool parallel) {
  if (spec.values.empty()) throw InvalidInput("sweep: no values given");
  std::vector<SweepRow> rows(spec.values.size());
  if (!parallel || spec.values.size() == 1 || std::thread::hardware_concurrency() <= 1) {
    for (std::size_t i = 0; i < rows.size(); ++i) rows[i] = evaluate(spec, spec.values[i]);
    return rows;
  }
  std::vector<std::future<SweepRow>> jobs;
  jobs.reserve(rows.size());
  for (double v : spec.values) jobs.push_back(std::async(std::launch::async, evaluate, std::cref(spec), v));
  for (std::size_t i = 0; i < rows.size(); ++i) rows[i] = jobs[i].get();
  return rows;
}

void write_sweep_csv(std::ostream& out, const SweepSpec& spec, const std::vector<SweepRow>& rows) {
  char buf[64];
  auto num = [&](double v) {
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return std::string(buf);
  };
  out << "# nfsent sweep axis=" << to_string(spec.axis) << " base=" << spec.base_preset << "\n";
  out << "value,status,balance,mean_phase,classification,suppression,predicted_balance,error\n";
  for (const auto& r : rows) {
    out << num(r.value) << ',' << (r.ok ? "ok" : "failed") << ',';
    if (r.ok) {
      out << num(r.balance) << ',' << num(r.mean_phase) << ',' << r.classification << ','
          << (r.suppression ? num(*r.suppression) : std::string()) << ',' << num(r.predicted_balance)
          << ",\n";
    } else {
      std::string msg = r.error;
      std::replace(msg.begin(), msg.end(), ',', ';');
      std::replace(msg.begin(), msg.end(), '\n', ' ');
      out << ",,,,," << msg << "\n";
    }
  }
}

}  // namespace nfsent
