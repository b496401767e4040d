#pragma once

#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace nfsent {

/// One level of the hyperfine splitting, held from t_start until the next segment begins.
/// A nonzero ramp_ns approaches the level linearly from the previous one.
struct ScheduleSegment {
  double t_start = 0.0;  ///< ns
  double delta_b = 0.0;  ///< signed splitting, rad/ns; 0 means field off
  double ramp_ns = 0.0;

  bool operator==(const ScheduleSegment&) const = default;
};

/// Record of a switching instant moved onto the integration grid.
struct ScheduleNudge {
  double requested_ns;
  double applied_ns;
};

/// Piecewise-constant (optionally ramped) hyperfine splitting delta_B(t).
class HyperfineSchedule {
 public:
  /// Field off for all t.
  HyperfineSchedule();
  /// Throws InvalidInput unless start times are strictly increasing and the first is <= 0.
  explicit HyperfineSchedule(std::vector<ScheduleSegment> segments);

  static HyperfineSchedule constant(double delta_b);

  double level_at(double t) const;
  /// Index of the segment holding at time t.
  std::size_t segment_index(double t) const;
  std::span<const ScheduleSegment> segments() const { return segments_; }
  double max_abs_level() const;
  /// First nonzero level, if any.
  std::optional<double> first_nonzero_level() const;

  /// Copy with every switching instant moved to the nearest multiple of dt.
  HyperfineSchedule aligned_to(double dt, std::vector<ScheduleNudge>* nudges = nullptr) const;

  bool operator==(const HyperfineSchedule&) const = default;

 private:
  std::vector<ScheduleSegment> segments_;
};

enum class FieldAction {
  set,     ///< set the given level
  invert,  ///< flip the sign of the current level
  off,     ///< level 0
  on,      ///< restore the given level, or the last nonzero level when none is given
};

struct FieldEvent {
  double t = 0.0;
  FieldAction action = FieldAction::set;
  std::optional<double> level;
  double ramp_ns = 0.0;

  bool operator==(const FieldEvent&) const = default;
};

/// Folds a time-ordered list of switching events into a schedule starting at t = 0 with
/// `initial_level`. Events at t <= 0 modify the initial level.
HyperfineSchedule build_schedule(std::span<const FieldEvent> events, double initial_level = 0.0);

const char* to_string(FieldAction action);
std::optional<FieldAction> parse_field_action(std::string_view text);

}  // namespace nfsent
