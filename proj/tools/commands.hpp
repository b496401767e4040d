#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace nfsent::cli {

enum ExitCode : int { kOk = 0, kInputError = 1, kNumericalFailure = 2 };

struct RunOptions {
  std::optional<std::string> preset;
  std::optional<std::filesystem::path> config;
  std::vector<std::string> overrides;
  std::optional<std::filesystem::path> out;
  std::optional<double> dt;
  std::string format = "csv";
};

struct SweepOptions {
  std::string axis;
  std::vector<double> values;
  std::string base = "fig2b";
  std::optional<std::filesystem::path> out;
  bool serial = false;
};

struct PlotOptions {
  std::filesystem::path traces;
  std::optional<std::filesystem::path> out;
};

/// Output directory: `out` if given (relative paths resolved against $NFSENT_OUTPUT_ROOT when
/// set), else $NFSENT_OUTPUT_ROOT/<name>, else ./<name>.
std::filesystem::path resolve_output_dir(const std::optional<std::filesystem::path>& out,
                                         const std::string& name);

// Each command prints diagnostics to stderr and returns an ExitCode.
int cmd_run(const RunOptions& options);
int cmd_sweep(const SweepOptions& options);
int cmd_plot(const PlotOptions& options);
int cmd_presets_list();

}  // namespace nfsent::cli
