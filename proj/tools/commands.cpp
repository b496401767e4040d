#include "commands.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>

#include "nfsent/config.hpp"
#include "nfsent/errors.hpp"
#include "nfsent/presets.hpp"
#include "nfsent/runner.hpp"
#include "nfsent/svg.hpp"
#include "nfsent/trace_io.hpp"

namespace nfsent::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::ofstream open_output(const fs::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidInput("cannot write " + path.string());
  return out;
}

void write_json(const fs::path& path, const json& j) {
  auto out = open_output(path);
  out << j.dump(2) << "\n";
}

void prepare_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) throw InvalidInput("cannot create output directory " + dir.string());
}

json traces_to_json(const TraceSet& tr) {
  json re_f = json::array(), im_f = json::array(), re_b = json::array(), im_b = json::array();
  for (std::size_t i = 0; i < tr.size(); ++i) {
    re_f.push_back(tr.fwd_detected[i].real());
    im_f.push_back(tr.fwd_detected[i].imag());
    re_b.push_back(tr.bwd_amp[i].real());
    im_b.push_back(tr.bwd_amp[i].imag());
  }
  return json{{"schema_version", kSchemaVersion},
              {"config_hash", tr.config_hash},
              {"t_ns", tr.t_ns},
              {"fwd", {{"re", re_f}, {"im", im_f}}},
              {"bwd", {{"re", re_b}, {"im", im_b}}},
              {"mirror_in_beam", tr.mirror_in_beam}};
}

template <typename F>
int guarded(F&& body) {
  try {
    return body();
  } catch (const NumericalFailure& e) {
    std::cerr << "nfsent: numerical failure at t = " << e.time_ns() << " ns: " << e.what() << "\n";
    return kNumericalFailure;
  } catch (const InvalidInput& e) {
    std::cerr << "nfsent: " << e.what() << "\n";
    return kInputError;
  } catch (const json::exception& e) {
    std::cerr << "nfsent: " << e.what() << "\n";
    return kInputError;
  } catch (const fs::filesystem_error& e) {
    std::cerr << "nfsent: " << e.what() << "\n";
    return kInputError;
  }
}

}  // namespace

fs::path resolve_output_dir(const std::optional<fs::path>& out, const std::string& name) {
  const char* root = std::getenv("NFSENT_OUTPUT_ROOT");
  if (out) {
    if (out->is_relative() && root && *root) return fs::path(root) / *out;
    return *out;
  }
  return (root && *root ? fs::path(root) : fs::path(".")) / name;
}

int cmd_run(const RunOptions& options) {
  return guarded([&] {
    if (options.preset.has_value() == options.config.has_value()) {
      throw InvalidInput("run: give exactly one of --preset or --config");
    }
    if (options.format != "csv" && options.format != "json") {
      throw InvalidInput("run: --format must be csv or json");
    }
    json j = options.preset ? preset_json(*options.preset) : load_json_file(*options.config);
    for (const auto& o : options.overrides) apply_override(j, o);
    if (options.dt) j["dt_ns"] = *options.dt;

    const auto scenario = validate_scenario(config_from_json(j));
    const auto& cfg = scenario.config();
    const fs::path dir = resolve_output_dir(options.out, cfg.name);
    prepare_dir(dir);

    const auto result = run_scenario(scenario);
    const auto report = analyze_run(scenario, result);
    if (result.diagnostics.linear_regime_warning) {
      std::cerr << "nfsent: warning: field exceeded 0.1 Gamma; linear response is questionable\n";
    }

    const auto aligned = cfg.schedule.aligned_to(cfg.dt_ns);
    if (options.format == "csv") {
      auto out = open_output(dir / "traces.csv");
      write_traces_csv(out, result.traces, aligned);
    } else {
      write_json(dir / "traces.json", traces_to_json(result.traces));
    }

    json rep = to_json(report);
    rep["schema_version"] = kSchemaVersion;
    write_json(dir / "report.json", rep);

    if (!result.snapshots.empty()) {
      std::vector<ExcitationPattern> patterns;
      std::vector<double> times;
      for (const auto& snap : result.snapshots) {
        try {
          patterns.push_back(excitation_pattern(snap, scenario.wave_number()));
          times.push_back(snap.t_ns);
        } catch (const InvalidInput& e) {
          std::cerr << "nfsent: snapshot at " << snap.t_ns << " ns skipped: " << e.what() << "\n";
        }
      }
      if (!patterns.empty()) {
        auto out = open_output(dir / "pattern.csv");
        write_pattern_csv(out, patterns, times, result.traces.config_hash);
      }
    }
    write_json(dir / "meta.json", scenario_metadata(scenario));
    std::cout << dir.string() << "\n";
    return kOk;
  });
}

int cmd_sweep(const SweepOptions& options) {
  return guarded([&] {
    SweepSpec spec;
    const auto axis = parse_sweep_axis(options.axis);
    if (!axis) throw InvalidInput("sweep: unknown axis '" + options.axis + "' (xi, R, delta_B, tau)");
    spec.axis = *axis;
    spec.values = options.values;
    spec.base_preset = options.base;
    preset_description(spec.base_preset);  // rejects unknown presets up front
    const auto rows = run_sweep(spec, !options.serial);

    const fs::path dir = resolve_output_dir(options.out, "sweep_" + std::string(to_string(spec.axis)));
    prepare_dir(dir);
    auto out = open_output(dir / "summary.csv");
    write_sweep_csv(out, spec, rows);
    std::size_t failed = 0;
    for (const auto& r : rows) failed += r.ok ? 0 : 1;
    if (failed > 0) std::cerr << "nfsent: " << failed << " sweep value(s) failed\n";
    std::cout << (dir / "summary.csv").string() << "\n";
    return kOk;
  });
}

int cmd_plot(const PlotOptions& options) {
  return guarded([&] {
    std::ifstream in(options.traces);
    if (!in) throw InvalidInput("cannot open " + options.traces.string());
    const auto table = read_traces_csv(in);
    const fs::path dir = options.out ? *options.out : options.traces.parent_path();
    if (!dir.empty()) prepare_dir(dir);
    {
      auto out = open_output(dir / "intensity.svg");
      out << render_intensity_svg(table);
    }
    {
      auto out = open_output(dir / "amplitude.svg");
      out << render_amplitude_svg(table);
    }
    std::cout << (dir / "intensity.svg").string() << "\n" << (dir / "amplitude.svg").string() << "\n";
    return kOk;
  });
}

int cmd_presets_list() {
  for (const auto& name : preset_names()) {
    std::cout << name << "\t" << preset_description(name) << "\n";
  }
  return kOk;
}

}  // namespace nfsent::cli
