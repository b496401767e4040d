#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "nfsent/model.hpp"

namespace nfsent {

/// Knobs shared by the built-in scenarios. Protocol instants (mirror delay, inversion, switch-off,
/// mirror disable time) are rederived from delta_b unless overridden.
struct PresetParams {
  std::optional<double> xi;  ///< default 1, or 0.01 for single_pass
  double reflectivity = 0.99;
  double delta_b_in_gamma = 30.0;
  std::optional<double> tau_ns;
  double t_on_ns = 100.0;
  double t_end_ns = 200.0;
  double dt_ns = 0.005;
  int n_depth = 201;
};

std::vector<std::string> preset_names();
std::string preset_description(std::string_view name);

/// JSON form of a built-in scenario, suitable for `--set` overrides before parsing.
/// Throws InvalidInput for an unknown name.
nlohmann::json preset_json(std::string_view name, const PresetParams& params = {});

ScenarioConfig make_preset(std::string_view name, const PresetParams& params = {});

/// Mirror disable time used by the presets: half the round trip, rounded up to 0.01 ns, so the
/// prompt reflection is just admitted.
double preset_disable_time(double tau_ns);

}  // namespace nfsent
