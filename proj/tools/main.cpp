#include <CLI11.hpp>

#include "commands.hpp"

int main(int argc, char** argv) {
  using namespace nfsent::cli;

  CLI::App app{"nfsent: forward/backward nuclear resonant scattering with a gated mirror"};
  app.require_subcommand(1);

  RunOptions run;
  std::string config_path, out_dir;
  auto* run_cmd = app.add_subcommand("run", "Simulate one scenario and write traces, report and metadata");
  auto* preset_opt = run_cmd->add_option("--preset", run.preset, "Built-in scenario (see `presets list`)");
  auto* config_opt = run_cmd->add_option("--config", config_path, "JSON scenario file")->check(CLI::ExistingFile);
  preset_opt->excludes(config_opt);
  run_cmd->add_option("--set", run.overrides, "Override a config key, e.g. sample.xi=0.5");
  run_cmd->add_option("--out", out_dir, "Output directory");
  run_cmd->add_option("--dt", run.dt, "Time step in ns");
  run_cmd->add_option("--format", run.format, "Trace format")->check(CLI::IsMember({"csv", "json"}));

  SweepOptions sweep;
  std::string sweep_out;
  auto* sweep_cmd = app.add_subcommand("sweep", "Run a preset over a list of parameter values");
  sweep_cmd->add_option("--axis", sweep.axis, "xi, R, delta_B (in units of Gamma) or tau (ns)")->required();
  sweep_cmd->add_option("--values", sweep.values, "Comma-separated values")->required()->delimiter(',');
  sweep_cmd->add_option("--base", sweep.base, "Base preset");
  sweep_cmd->add_option("--out", sweep_out, "Output directory");
  sweep_cmd->add_flag("--serial", sweep.serial, "Run values one after another");

  PlotOptions plot;
  std::string traces_path, plot_out;
  auto* plot_cmd = app.add_subcommand("plot", "Render SVG panels from a traces.csv file");
  plot_cmd->add_option("traces", traces_path, "traces.csv")->required();
  plot_cmd->add_option("--out", plot_out, "Output directory (default: next to the CSV)");

  auto* presets_cmd = app.add_subcommand("presets", "Inspect built-in scenarios");
  presets_cmd->require_subcommand(1);
  auto* list_cmd = presets_cmd->add_subcommand("list", "List preset names");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInputError;
  }

  if (run_cmd->parsed()) {
    if (!config_path.empty()) run.config = config_path;
    if (!out_dir.empty()) run.out = out_dir;
    return cmd_run(run);
  }
  if (sweep_cmd->parsed()) {
    if (!sweep_out.empty()) sweep.out = sweep_out;
    return cmd_sweep(sweep);
  }
  if (plot_cmd->parsed()) {
    plot.traces = traces_path;
    if (!plot_out.empty()) plot.out = plot_out;
    return cmd_plot(plot);
  }
  if (list_cmd->parsed()) return cmd_presets_list();
  return kInputError;
}
