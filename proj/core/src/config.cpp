#include "nfsent/config.hpp"

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "nfsent/errors.hpp"

namespace nfsent {

using nlohmann::json;

namespace {

template <typename T>
T get_or(const json& j, const char* key, T fallback, const std::string& where) {
  if (!j.contains(key) || j.at(key).is_null()) return fallback;
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw InvalidInput(where + "." + key + ": " + e.what());
  }
}

void reject_unknown(const json& j, std::initializer_list<std::string_view> known,
                    const std::string& where) {
  if (!j.is_object()) throw InvalidInput(where + ": expected an object");
  for (const auto& [key, value] : j.items()) {
    bool found = false;
    for (auto k : known) found = found || key == k;
    if (!found) throw InvalidInput(where + ": unknown key '" + key + "'");
  }
}

const json& section(const json& j, const char* key) {
  static const json empty = json::object();
  return j.contains(key) ? j.at(key) : empty;
}

HyperfineSchedule schedule_from_json(const json& h, const PhysConsts& consts) {
  reject_unknown(h, {"segments", "delta_b", "delta_b_in_gamma", "events"}, "hyperfine");
  if (h.contains("segments")) {
    if (h.contains("events") || h.contains("delta_b") || h.contains("delta_b_in_gamma")) {
      throw InvalidInput("hyperfine: 'segments' cannot be combined with a base level or events");
    }
    std::vector<ScheduleSegment> segs;
    for (const auto& s : h.at("segments")) {
      reject_unknown(s, {"t_ns", "delta_b", "ramp_ns"}, "hyperfine.segments[]");
      segs.push_back({get_or(s, "t_ns", 0.0, "hyperfine.segments[]"),
                      get_or(s, "delta_b", 0.0, "hyperfine.segments[]"),
                      get_or(s, "ramp_ns", 0.0, "hyperfine.segments[]")});
    }
    return HyperfineSchedule(std::move(segs));
  }

  if (h.contains("delta_b") && h.contains("delta_b_in_gamma")) {
    throw InvalidInput("hyperfine: give either delta_b or delta_b_in_gamma, not both");
  }
  const double base = h.contains("delta_b_in_gamma")
                          ? delta_from_gamma_units(get_or(h, "delta_b_in_gamma", 0.0, "hyperfine"), consts)
                          : get_or(h, "delta_b", 0.0, "hyperfine");

  std::vector<FieldEvent> events;
  if (h.contains("events")) {
    for (const auto& e : h.at("events")) {
      const std::string where = "hyperfine.events[" + std::to_string(events.size()) + "]";
      reject_unknown(e, {"t_ns", "action", "delta_b", "level_in_base", "ramp_ns"}, where);
      FieldEvent ev;
      ev.t = get_or(e, "t_ns", 0.0, where);
      const auto action = get_or<std::string>(e, "action", "", where);
      const auto parsed = parse_field_action(action);
      if (!parsed) throw InvalidInput(where + ".action: unknown action '" + action + "'");
      ev.action = *parsed;
      if (e.contains("delta_b") && e.contains("level_in_base")) {
        throw InvalidInput(where + ": give either delta_b or level_in_base, not both");
      }
      if (e.contains("delta_b")) ev.level = get_or(e, "delta_b", 0.0, where);
      if (e.contains("level_in_base")) ev.level = base * get_or(e, "level_in_base", 0.0, where);
      ev.ramp_ns = get_or(e, "ramp_ns", 0.0, where);
      events.push_back(ev);
    }
  }
  return build_schedule(events, base);
}

}  // namespace

ScenarioConfig config_from_json(const json& j) {
  reject_unknown(j, {"name", "consts", "sample", "pulse", "mirror", "detector", "hyperfine",
                     "t_end_ns", "dt_ns", "snapshots_ns"},
                 "config");
  ScenarioConfig c;
  c.name = get_or<std::string>(j, "name", c.name, "config");

  const auto& jc = section(j, "consts");
  reject_unknown(jc, {"gamma", "transition_energy_kev", "clebsch_a"}, "consts");
  c.consts.gamma = get_or(jc, "gamma", c.consts.gamma, "consts");
  c.consts.transition_energy_kev =
      get_or(jc, "transition_energy_kev", c.consts.transition_energy_kev, "consts");
  c.consts.clebsch_a = get_or(jc, "clebsch_a", c.consts.clebsch_a, "consts");

  const auto& js = section(j, "sample");
  reject_unknown(js, {"xi", "thickness_um", "n_depth"}, "sample");
  c.sample.xi = get_or(js, "xi", c.sample.xi, "sample");
  c.sample.thickness_um = get_or(js, "thickness_um", c.sample.thickness_um, "sample");
  c.sample.n_depth = get_or(js, "n_depth", c.sample.n_depth, "sample");

  const auto& jp = section(j, "pulse");
  reject_unknown(jp, {"mode", "area", "fwhm_ns", "t0_ns"}, "pulse");
  const auto mode = get_or<std::string>(jp, "mode", "impulsive", "pulse");
  if (mode == "impulsive") {
    c.pulse.mode = PulseMode::impulsive;
  } else if (mode == "gaussian") {
    c.pulse.mode = PulseMode::gaussian;
  } else {
    throw InvalidInput("pulse.mode: expected 'impulsive' or 'gaussian', got '" + mode + "'");
  }
  c.pulse.area = get_or(jp, "area", c.pulse.area, "pulse");
  c.pulse.fwhm_ns = get_or(jp, "fwhm_ns", c.pulse.fwhm_ns, "pulse");
  c.pulse.t0_ns = get_or(jp, "t0_ns", c.pulse.t0_ns, "pulse");

  const auto& jm = section(j, "mirror");
  reject_unknown(jm, {"present", "reflectivity", "delay_ns", "disable_time_ns"}, "mirror");
  c.mirror.present = get_or(jm, "present", c.mirror.present, "mirror");
  c.mirror.reflectivity = get_or(jm, "reflectivity", c.mirror.reflectivity, "mirror");
  if (jm.contains("delay_ns") && !jm.at("delay_ns").is_null()) {
    c.mirror.delay_ns = get_or(jm, "delay_ns", 0.0, "mirror");
  }
  c.mirror.disable_time_ns = get_or(jm, "disable_time_ns", c.mirror.disable_time_ns, "mirror");

  const auto& jd = section(j, "detector");
  reject_unknown(jd, {"attenuate_forward"}, "detector");
  c.detector.attenuate_forward = get_or(jd, "attenuate_forward", c.detector.attenuate_forward, "detector");

  c.schedule = schedule_from_json(section(j, "hyperfine"), c.consts);
  c.t_end_ns = get_or(j, "t_end_ns", c.t_end_ns, "config");
  c.dt_ns = get_or(j, "dt_ns", c.dt_ns, "config");
  c.snapshot_times_ns = get_or(j, "snapshots_ns", c.snapshot_times_ns, "config");
  return c;
}

json config_to_json(const ScenarioConfig& c) {
  json segments = json::array();
  for (const auto& s : c.schedule.segments()) {
    segments.push_back({{"t_ns", s.t_start}, {"delta_b", s.delta_b}, {"ramp_ns", s.ramp_ns}});
  }
  return json{
      {"name", c.name},
      {"consts",
       {{"gamma", c.consts.gamma},
        {"transition_energy_kev", c.consts.transition_energy_kev},
        {"clebsch_a", c.consts.clebsch_a}}},
      {"sample",
       {{"xi", c.sample.xi}, {"thickness_um", c.sample.thickness_um}, {"n_depth", c.sample.n_depth}}},
      {"pulse",
       {{"mode", c.pulse.mode == PulseMode::impulsive ? "impulsive" : "gaussian"},
        {"area", c.pulse.area},
        {"fwhm_ns", c.pulse.fwhm_ns},
        {"t0_ns", c.pulse.t0_ns}}},
      {"mirror",
       {{"present", c.mirror.present},
        {"reflectivity", c.mirror.reflectivity},
        {"delay_ns", c.mirror.delay_ns ? json(*c.mirror.delay_ns) : json(nullptr)},
        {"disable_time_ns", c.mirror.disable_time_ns}}},
      {"detector", {{"attenuate_forward", c.detector.attenuate_forward}}},
      {"hyperfine", {{"segments", segments}}},
      {"t_end_ns", c.t_end_ns},
      {"dt_ns", c.dt_ns},
      {"snapshots_ns", c.snapshot_times_ns},
  };
}

void apply_override(json& j, std::string_view assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string_view::npos || eq == 0) {
    throw InvalidInput("override '" + std::string(assignment) + "' is not of the form key=value");
  }
  const std::string key(assignment.substr(0, eq));
  const std::string text(assignment.substr(eq + 1));

  json value = json::parse(text, nullptr, /*allow_exceptions=*/false);
  if (value.is_discarded()) value = text;

  json* node = &j;
  std::size_t start = 0;
  while (true) {
    const auto dot = key.find('.', start);
    const std::string part = key.substr(start, dot - start);
    if (part.empty()) throw InvalidInput("override key '" + key + "' has an empty component");
    if (dot == std::string::npos) {
      (*node)[part] = value;
      break;
    }
    if (!node->contains(part) || !(*node)[part].is_object()) (*node)[part] = json::object();
    node = &(*node)[part];
    start = dot + 1;
  }
}

json load_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open config file " + path.string());
  try {
    return json::parse(in, nullptr, true, /*ignore_comments=*/true);
  } catch (const json::parse_error& e) {
    throw InvalidInput("config file " + path.string() + ": " + e.what());
  }
}

std::string scenario_hash(const ScenarioConfig& config) {
  const std::string canonical = config_to_json(config).dump();
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char ch : canonical) {
    h ^= ch;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

json scenario_metadata(const ValidatedScenario& scenario) {
  const auto& c = scenario.config();
  std::vector<ScheduleNudge> nudges;
  const auto aligned = c.schedule.aligned_to(c.dt_ns, &nudges);
  json jn = json::array();
  for (const auto& n : nudges) jn.push_back({{"requested_ns", n.requested_ns}, {"applied_ns", n.applied_ns}});
  json segs = json::array();
  for (const auto& s : aligned.segments()) {
    segs.push_back({{"t_ns", s.t_start}, {"delta_b", s.delta_b}, {"ramp_ns", s.ramp_ns}});
  }
  return json{
      {"schema_version", kSchemaVersion},
      {"config_hash", scenario_hash(c)},
      {"config", config_to_json(c)},
      {"derived",
       {{"tau_ns", scenario.tau()},
        {"eta_l_per_ns", scenario.eta_l()},
        {"wave_number_per_angstrom", scenario.wave_number()},
        {"reference_delta_b", scenario.reference_delta_b()},
        {"n_steps", scenario.n_steps()},
        {"aligned_segments", segs},
        {"schedule_nudges", jn}}},
  };
}

}  // namespace nfsent
