#include <gtest/gtest.h>

#include <sstream>

#include "nfsent/config.hpp"
#include "nfsent/runner.hpp"
#include "test_support.hpp"

namespace nfsent {
namespace {

using namespace nfsent::testing;

TEST(StorageWindow, FromSchedule) {
  const auto w = find_storage_window(make_preset("fig2b").schedule);
  ASSERT_TRUE(w);
  EXPECT_NEAR(w->t_off, 22.16393617107599, 1e-12);
  EXPECT_EQ(w->t_on, 100.0);
  EXPECT_FALSE(find_storage_window(make_preset("single_pass").schedule));
  EXPECT_FALSE(find_storage_window(HyperfineSchedule{}));
}

TEST(SweepAxis, Names) {
  for (auto axis : {SweepAxis::xi, SweepAxis::reflectivity, SweepAxis::delta_b, SweepAxis::tau}) {
    EXPECT_EQ(parse_sweep_axis(to_string(axis)), axis);
  }
  EXPECT_FALSE(parse_sweep_axis("thickness"));
}

TEST(Sweep, ScenarioPerValue) {
  SweepSpec spec;
  spec.axis = SweepAxis::reflectivity;
  spec.values = {0.5};
  EXPECT_EQ(sweep_scenario(spec, 0.5).mirror.reflectivity, 0.5);
  spec.axis = SweepAxis::delta_b;
  const auto c = sweep_scenario(spec, 15.0);
  EXPECT_NEAR(c.schedule.level_at(1.0), 15.0 / 141.1, 1e-12);
  EXPECT_NEAR(validate_scenario(c).tau(), 2.0 * 14.775957447383993, 1e-9);
}

// Short scenarios keep the sweep cheap; rows must come back in input order.
TEST(Sweep, RowsInInputOrderAndMatchSingleRuns) {
  SweepSpec spec;
  spec.axis = SweepAxis::reflectivity;
  spec.values = {0.9, 0.0, 0.99, -1.0};
  spec.base.t_on_ns = 40.0;
  spec.base.t_end_ns = 80.0;
  const auto rows = run_sweep(spec, true);
  ASSERT_EQ(rows.size(), 4u);
  for (std::size_t i = 0; i < rows.size(); ++i) EXPECT_EQ(rows[i].value, spec.values[i]);
  EXPECT_TRUE(rows[0].ok);
  EXPECT_TRUE(rows[1].ok);
  EXPECT_EQ(rows[1].balance, 0.0);
  EXPECT_FALSE(rows[3].ok);
  EXPECT_FALSE(rows[3].error.empty());

  const auto v = validate_scenario(sweep_scenario(spec, 0.99));
  const auto report = analyze_run(v, run_scenario(v));
  ASSERT_TRUE(report.entanglement);
  EXPECT_EQ(rows[2].balance, report.entanglement->balance);
  EXPECT_EQ(rows[2].classification, to_string(report.entanglement->classification));

  const auto serial = run_sweep(spec, false);
  for (std::size_t i = 0; i < rows.size(); ++i) EXPECT_EQ(serial[i].balance, rows[i].balance);

  std::stringstream csv;
  write_sweep_csv(csv, spec, rows);
  std::string header;
  do {
    std::getline(csv, header);
  } while (header.rfind('#', 0) == 0);
  EXPECT_EQ(header, "value,status,balance,mean_phase,classification,suppression,predicted_balance,error");
}

TEST(AnalyzeRun, Fig2bReport) {
  auto c = make_preset("fig2b");
  const auto v = validate_scenario(c);
  const auto report = analyze_run(v, run_scenario(v));
  ASSERT_TRUE(report.storage);
  ASSERT_TRUE(report.storage_suppression);
  EXPECT_LT(*report.storage_suppression, 1e-2);
  ASSERT_TRUE(report.beat_period_ns);
  EXPECT_NEAR(*report.beat_period_ns, 14.776, 0.05 * 14.776);
  ASSERT_EQ(report.patterns.size(), 1u);
  EXPECT_EQ(report.entanglement->classification, EntanglementClass::symmetric);
  const auto j = to_json(report);
  EXPECT_EQ(j.at("classification"), "symmetric");
  EXPECT_EQ(j.at("config_hash"), scenario_hash(v.config()));
}

}  // namespace
}  // namespace nfsent
