#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "nfsent/model.hpp"

namespace nfsent {

/// Configuration schema version written into every output file.
inline constexpr int kSchemaVersion = 1;

/// Reads a scenario from its JSON form. Accepted keys mirror ScenarioConfig; times are in ns,
/// lengths in um. The hyperfine section takes either explicit `segments` or a base level
/// (`delta_b` in rad/ns or `delta_b_in_gamma`) plus switching `events`.
ScenarioConfig config_from_json(const nlohmann::json& j);

/// Canonical JSON form (explicit segments, all fields present).
nlohmann::json config_to_json(const ScenarioConfig& config);

/// Applies a dotted `key=value` override, e.g. `sample.xi=0.5`. The value is parsed as JSON when
/// possible and kept as a string otherwise.
void apply_override(nlohmann::json& j, std::string_view assignment);

nlohmann::json load_json_file(const std::filesystem::path& path);

/// Stable 64-bit FNV-1a hash of the canonical config, as 16 hex digits.
std::string scenario_hash(const ScenarioConfig& config);

/// Resolved description of a validated scenario for meta.json.
nlohmann::json scenario_metadata(const ValidatedScenario& scenario);

}  // namespace nfsent
