#include <gtest/gtest.h>

#include <limits>
#include <random>
#include <vector>

#include "nfsent/errors.hpp"
#include "nfsent/schedule.hpp"

namespace nfsent {
namespace {

constexpr double kDelta = 30.0 / 141.1;

std::vector<double> levels(const HyperfineSchedule& s) {
  std::vector<double> out;
  for (const auto& seg : s.segments()) out.push_back(seg.delta_b);
  return out;
}

TEST(BuildSchedule, Fig2b) {
  const std::vector<FieldEvent> events{
      {-std::numeric_limits<double>::infinity(), FieldAction::on, kDelta},
      {22.16, FieldAction::off},
      {100.0, FieldAction::on, kDelta}};
  const auto s = build_schedule(events);
  EXPECT_EQ(levels(s), (std::vector<double>{kDelta, 0.0, kDelta}));
  EXPECT_EQ(s.level_at(10.0), kDelta);
  EXPECT_EQ(s.level_at(50.0), 0.0);
  EXPECT_EQ(s.level_at(150.0), kDelta);
}

TEST(BuildSchedule, Fig2cKeepsInvertedLevelOnRetrieval) {
  const std::vector<FieldEvent> events{
      {7.39, FieldAction::invert}, {22.16, FieldAction::off}, {100.0, FieldAction::on}};
  const auto s = build_schedule(events, kDelta);
  EXPECT_EQ(levels(s), (std::vector<double>{kDelta, -kDelta, 0.0, -kDelta}));
}

TEST(BuildSchedule, ExplicitOnLevelWins) {
  const std::vector<FieldEvent> events{
      {7.39, FieldAction::invert}, {22.16, FieldAction::off}, {100.0, FieldAction::on, kDelta}};
  EXPECT_EQ(levels(build_schedule(events, kDelta)).back(), kDelta);
}

TEST(BuildSchedule, EmptyIsConstant) {
  const auto s = build_schedule({}, kDelta);
  for (double t : {0.0, 1.0, 1e3, 1e9}) EXPECT_EQ(s.level_at(t), kDelta);
}

TEST(BuildSchedule, Errors) {
  EXPECT_THROW(build_schedule(std::vector<FieldEvent>{{1.0, FieldAction::invert}}, 0.0), InvalidInput);
  EXPECT_THROW(build_schedule(std::vector<FieldEvent>{{1.0, FieldAction::off}, {1.0, FieldAction::invert}}, kDelta),
               InvalidInput);
  EXPECT_THROW(build_schedule(std::vector<FieldEvent>{{2.0, FieldAction::off}, {1.0, FieldAction::on}}, kDelta),
               InvalidInput);
  EXPECT_THROW(build_schedule(std::vector<FieldEvent>{{1.0, FieldAction::set}}, kDelta), InvalidInput);
  EXPECT_THROW(build_schedule(std::vector<FieldEvent>{{1.0, FieldAction::on}}, 0.0), InvalidInput);
  // Identical duplicates are harmless.
  EXPECT_NO_THROW(build_schedule(std::vector<FieldEvent>{{1.0, FieldAction::off}, {1.0, FieldAction::off}}, kDelta));
}

TEST(HyperfineSchedule, RejectsBadSegments) {
  EXPECT_THROW(HyperfineSchedule(std::vector<ScheduleSegment>{}), InvalidInput);
  EXPECT_THROW(HyperfineSchedule({{1.0, kDelta, 0.0}}), InvalidInput);
  EXPECT_THROW(HyperfineSchedule({{0.0, kDelta, 0.0}, {0.0, 0.0, 0.0}}), InvalidInput);
  EXPECT_THROW(HyperfineSchedule({{0.0, kDelta, 0.0}, {5.0, 0.0, -1.0}}), InvalidInput);
}

TEST(HyperfineSchedule, Ramp) {
  const HyperfineSchedule s({{0.0, 0.0, 0.0}, {10.0, 2.0, 4.0}});
  EXPECT_DOUBLE_EQ(s.level_at(9.0), 0.0);
  EXPECT_DOUBLE_EQ(s.level_at(11.0), 0.5);
  EXPECT_DOUBLE_EQ(s.level_at(14.0), 2.0);
}

TEST(HyperfineSchedule, AlignedToGrid) {
  const std::vector<FieldEvent> events{{7.3879787, FieldAction::invert}, {22.1639362, FieldAction::off}};
  std::vector<ScheduleNudge> nudges;
  const auto s = build_schedule(events, kDelta).aligned_to(0.005, &nudges);
  ASSERT_EQ(s.segments().size(), 3u);
  EXPECT_NEAR(s.segments()[1].t_start, 7.39, 1e-12);
  EXPECT_NEAR(s.segments()[2].t_start, 22.165, 1e-12);
  ASSERT_EQ(nudges.size(), 2u);
  EXPECT_DOUBLE_EQ(nudges[0].requested_ns, 7.3879787);
}

// Every instant in [0, t_end] maps to exactly one segment, and that segment's level.
TEST(HyperfineSchedule, TotalOnHorizonProperty) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> gap(0.01, 30.0);
  std::uniform_int_distribution<int> pick(0, 3);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<FieldEvent> events;
    double t = 0.0;
    double level = kDelta;
    for (int i = 0; i < 6; ++i) {
      t += gap(rng);
      switch (pick(rng)) {
        case 0: events.push_back({t, FieldAction::off}); level = 0.0; break;
        case 1: events.push_back({t, FieldAction::on}); level = 1.0; break;
        case 2: events.push_back({t, FieldAction::set, 0.5 * kDelta}); level = 1.0; break;
        default:
          if (level != 0.0) events.push_back({t, FieldAction::invert});
          break;
      }
    }
    const auto s = build_schedule(events, kDelta);
    const auto segs = s.segments();
    for (double q = 0.0; q <= t + 10.0; q += 0.37) {
      std::size_t holding = 0;
      for (std::size_t i = 0; i < segs.size(); ++i) {
        const double end = i + 1 < segs.size() ? segs[i + 1].t_start : std::numeric_limits<double>::infinity();
        if (q >= segs[i].t_start && q < end) ++holding;
      }
      ASSERT_EQ(holding, 1u) << "t = " << q;
      EXPECT_EQ(s.level_at(q), segs[s.segment_index(q)].delta_b);
    }
  }
}

TEST(FieldAction, ParseRoundTrip) {
  for (auto a : {FieldAction::set, FieldAction::invert, FieldAction::off, FieldAction::on}) {
    EXPECT_EQ(parse_field_action(to_string(a)), a);
  }
  EXPECT_FALSE(parse_field_action("flip"));
}

}  // namespace
}  // namespace nfsent
