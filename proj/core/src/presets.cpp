#include "nfsent/presets.hpp"

#include <cmath>

#include "nfsent/config.hpp"
#include "nfsent/errors.hpp"

namespace nfsent {

using nlohmann::json;

double preset_disable_time(double tau_ns) {
  // The small guard absorbs rounding of values that are already on the 0.01 ns grid.
  return std::ceil(tau_ns / 2.0 * 100.0 - 1e-9) / 100.0;
}

std::vector<std::string> preset_names() { return {"fig2a", "fig2b", "fig2c", "single_pass"}; }

std::string preset_description(std::string_view name) {
  if (name == "fig2a") return "gated mirror, field off at the second beat node, on at 100 ns";
  if (name == "fig2b") return "fig2a with storage-window snapshots: symmetric entangled state";
  if (name == "fig2c") return "fig2b plus a field inversion at the first beat node: antisymmetric";
  if (name == "single_pass") return "thin sample (xi = 0.01), no mirror, constant field";
  throw InvalidInput("unknown preset '" + std::string(name) + "'");
}

json preset_json(std::string_view name, const PresetParams& p) {
  const PhysConsts consts;
  const double delta_b = delta_from_gamma_units(p.delta_b_in_gamma, consts);
  const auto timings = derived_timings(delta_b);
  const double tau = p.tau_ns.value_or(timings.tau);

  json j{
      {"name", std::string(name)},
      {"sample", {{"xi", p.xi.value_or(name == "single_pass" ? 0.01 : 1.0)}, {"thickness_um", 10.0}, {"n_depth", p.n_depth}}},
      {"pulse", {{"mode", "impulsive"}, {"area", 1e-4}, {"t0_ns", 0.0}}},
      {"mirror",
       {{"present", true},
        {"reflectivity", p.reflectivity},
        {"delay_ns", p.tau_ns ? json(*p.tau_ns) : json(nullptr)},
        {"disable_time_ns", preset_disable_time(tau)}}},
      {"t_end_ns", p.t_end_ns},
      {"dt_ns", p.dt_ns},
  };

  json events = json::array();
  if (name == "fig2a" || name == "fig2b" || name == "fig2c") {
    if (name == "fig2c") events.push_back({{"t_ns", timings.t_invert}, {"action", "invert"}});
    events.push_back({{"t_ns", timings.t_off}, {"action", "off"}});
    // 'on' without a level restores the last nonzero level, i.e. -delta_b after an inversion.
    events.push_back({{"t_ns", p.t_on_ns}, {"action", "on"}});
    if (name != "fig2a") {
      j["snapshots_ns"] = json::array({0.5 * (timings.t_off + p.t_on_ns)});
    }
  } else if (name == "single_pass") {
    j["mirror"] = {{"present", false}, {"reflectivity", 0.0}, {"delay_ns", 0.0}, {"disable_time_ns", 0.0}};
  } else {
    throw InvalidInput("unknown preset '" + std::string(name) + "'");
  }
  j["hyperfine"] = {{"delta_b_in_gamma", p.delta_b_in_gamma}, {"events", events}};
  return j;
}

ScenarioConfig make_preset(std::string_view name, const PresetParams& params) {
  return config_from_json(preset_json(name, params));
}

}  // namespace nfsent
