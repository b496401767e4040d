#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

#include "nfsent/config.hpp"
#include "nfsent/errors.hpp"
#include "nfsent/presets.hpp"

namespace nfsent {
namespace {

using nlohmann::json;

TEST(Config, PresetsRoundTripThroughCanonicalJson) {
  for (const auto& name : preset_names()) {
    const auto c = make_preset(name);
    const auto back = config_from_json(config_to_json(c));
    EXPECT_EQ(back, c) << name;
    EXPECT_EQ(scenario_hash(back), scenario_hash(c)) << name;
    EXPECT_FALSE(preset_description(name).empty());
  }
  EXPECT_THROW(make_preset("fig9"), InvalidInput);
}

TEST(Config, HashIsStableAndSensitive) {
  const auto c = make_preset("fig2b");
  const auto h = scenario_hash(c);
  EXPECT_EQ(h.size(), 16u);
  EXPECT_EQ(h, scenario_hash(make_preset("fig2b")));
  auto d = c;
  d.sample.xi = 1.0000001;
  EXPECT_NE(scenario_hash(d), h);
  EXPECT_NE(scenario_hash(make_preset("fig2c")), h);
}

TEST(Config, DottedOverrides) {
  auto j = preset_json("fig2b");
  apply_override(j, "sample.xi=0.5");
  apply_override(j, "mirror.present=false");
  apply_override(j, "name=custom");
  apply_override(j, "pulse.mode=gaussian");
  const auto c = config_from_json(j);
  EXPECT_EQ(c.sample.xi, 0.5);
  EXPECT_FALSE(c.mirror.present);
  EXPECT_EQ(c.name, "custom");
  EXPECT_EQ(c.pulse.mode, PulseMode::gaussian);
  EXPECT_THROW(apply_override(j, "no_equals_sign"), InvalidInput);
}

TEST(Config, UnknownKeysRejected) {
  auto j = preset_json("fig2a");
  j["sample"]["thicknes_um"] = 1.0;
  try {
    config_from_json(j);
    FAIL();
  } catch (const InvalidInput& e) {
    EXPECT_NE(std::string(e.what()).find("thicknes_um"), std::string::npos);
  }
  auto k = preset_json("fig2a");
  k["extra"] = 1;
  EXPECT_THROW(config_from_json(k), InvalidInput);
}

TEST(Config, WrongTypeNamesField) {
  auto j = preset_json("fig2a");
  j["sample"]["xi"] = "thick";
  try {
    config_from_json(j);
    FAIL();
  } catch (const InvalidInput& e) {
    EXPECT_NE(std::string(e.what()).find("sample.xi"), std::string::npos);
  }
}

TEST(Config, EventsRelativeToBaseLevel) {
  const json j = {{"hyperfine",
                   {{"delta_b", 0.2},
                    {"events",
                     {{{"t_ns", 10.0}, {"action", "set"}, {"level_in_base", -1.0}},
                      {{"t_ns", 20.0}, {"action", "off"}},
                      {{"t_ns", 30.0}, {"action", "on"}}}}}}};
  const auto c = config_from_json(j);
  EXPECT_EQ(c.schedule.level_at(5.0), 0.2);
  EXPECT_EQ(c.schedule.level_at(15.0), -0.2);
  EXPECT_EQ(c.schedule.level_at(25.0), 0.0);
  EXPECT_EQ(c.schedule.level_at(35.0), -0.2);
}

TEST(Config, ExplicitSegmentsExclusive) {
  json j = {{"hyperfine", {{"segments", {{{"t_ns", 0.0}, {"delta_b", 0.1}}}}, {"delta_b", 0.1}}}};
  EXPECT_THROW(config_from_json(j), InvalidInput);
  j["hyperfine"].erase("delta_b");
  EXPECT_EQ(config_from_json(j).schedule.level_at(3.0), 0.1);
  j["hyperfine"]["events"] = json::array({{{"t_ns", 1.0}, {"action", "flip"}}});
  EXPECT_THROW(config_from_json(j), InvalidInput);
}

TEST(Config, LoadsFileWithComments) {
  const auto path = std::filesystem::temp_directory_path() / "nfsent_config_test.json";
  {
    std::ofstream out(path);
    out << "// thin sample\n{\"sample\": {\"xi\": 0.25}, /* no mirror */ \"mirror\": {\"present\": false}}\n";
  }
  const auto c = config_from_json(load_json_file(path));
  EXPECT_EQ(c.sample.xi, 0.25);
  EXPECT_FALSE(c.mirror.present);
  std::filesystem::remove(path);
  EXPECT_THROW(load_json_file(path), InvalidInput);
}

TEST(Config, MetadataCarriesDerivedTimings) {
  const auto v = validate_scenario(make_preset("fig2c"));
  const auto meta = scenario_metadata(v);
  EXPECT_EQ(meta.at("schema_version"), kSchemaVersion);
  EXPECT_NEAR(meta.at("derived").at("tau_ns").get<double>(), 14.775957447383993, 1e-12);
  EXPECT_EQ(meta.at("config_hash"), scenario_hash(v.config()));
  EXPECT_EQ(meta.at("derived").at("schedule_nudges").size(), 2u);
}

TEST(Presets, DisableTimeAdmitsPrompt) {
  EXPECT_NEAR(preset_disable_time(14.775957447383993), 7.39, 1e-12);
  EXPECT_NEAR(preset_disable_time(14.0), 7.0, 1e-12);
  const auto c = make_preset("fig2c");
  EXPECT_NEAR(c.mirror.disable_time_ns, 7.39, 1e-12);
  ASSERT_EQ(c.snapshot_times_ns.size(), 1u);
  EXPECT_NEAR(c.snapshot_times_ns[0], (22.16393617107599 + 100.0) / 2.0, 1e-9);
  EXPECT_FALSE(make_preset("single_pass").mirror.present);
  EXPECT_EQ(make_preset("single_pass").sample.xi, 0.01);
}

}  // namespace
}  // namespace nfsent
