#include "nfsent/schedule.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "nfsent/errors.hpp"

namespace nfsent {

HyperfineSchedule::HyperfineSchedule() : segments_{ScheduleSegment{}} {}

HyperfineSchedule::HyperfineSchedule(std::vector<ScheduleSegment> segments)
    : segments_(std::move(segments)) {
  if (segments_.empty()) {
    throw InvalidInput("schedule.segments: at least one segment is required");
  }
  if (!(segments_.front().t_start <= 0.0)) {
    throw InvalidInput("schedule.segments: first segment must start at t <= 0");
  }
  for (std::size_t i = 0; i < segments_.size(); ++i) {
    const auto& s = segments_[i];
    if (!std::isfinite(s.t_start) || !std::isfinite(s.delta_b)) {
      throw InvalidInput("schedule.segments[" + std::to_string(i) + "]: non-finite value");
    }
    if (s.ramp_ns < 0.0) {
      throw InvalidInput("schedule.segments[" + std::to_string(i) + "].ramp_ns must be >= 0");
    }
    if (i > 0 && !(s.t_start > segments_[i - 1].t_start)) {
      throw InvalidInput("schedule.segments: start times must be strictly increasing");
    }
  }
}

HyperfineSchedule HyperfineSchedule::constant(double delta_b) {
  return HyperfineSchedule({ScheduleSegment{0.0, delta_b, 0.0}});
}

std::size_t HyperfineSchedule::segment_index(double t) const {
  auto it = std::upper_bound(segments_.begin(), segments_.end(), t,
                             [](double v, const ScheduleSegment& s) { return v < s.t_start; });
  if (it == segments_.begin()) return 0;
  return static_cast<std::size_t>(std::distance(segments_.begin(), it)) - 1;
}

double HyperfineSchedule::level_at(double t) const {
  const std::size_t i = segment_index(t);
  const auto& s = segments_[i];
  if (i > 0 && s.ramp_ns > 0.0 && t < s.t_start + s.ramp_ns) {
    const double prev = segments_[i - 1].delta_b;
    const double frac = (t - s.t_start) / s.ramp_ns;
    return prev + frac * (s.delta_b - prev);
  }
  return s.delta_b;
}

double HyperfineSchedule::max_abs_level() const {
  double m = 0.0;
  for (const auto& s : segments_) m = std::max(m, std::abs(s.delta_b));
  return m;
}

std::optional<double> HyperfineSchedule::first_nonzero_level() const {
  for (const auto& s : segments_) {
    if (s.delta_b != 0.0) return s.delta_b;
  }
  return std::nullopt;
}

HyperfineSchedule HyperfineSchedule::aligned_to(double dt, std::vector<ScheduleNudge>* nudges) const {
  std::vector<ScheduleSegment> out;
  out.reserve(segments_.size());
  for (const auto& s : segments_) {
    ScheduleSegment moved = s;
    if (s.t_start > 0.0) {
      moved.t_start = std::round(s.t_start / dt) * dt;
      if (nudges && moved.t_start != s.t_start) nudges->push_back({s.t_start, moved.t_start});
    }
    // A later segment landing on the same grid point replaces the earlier one.
    if (!out.empty() && moved.t_start <= out.back().t_start) {
      out.back().delta_b = moved.delta_b;
      out.back().ramp_ns = moved.ramp_ns;
    } else {
      out.push_back(moved);
    }
  }
  return HyperfineSchedule(std::move(out));
}

const char* to_string(FieldAction action) {
  switch (action) {
    case FieldAction::set: return "set";
    case FieldAction::invert: return "invert";
    case FieldAction::off: return "off";
    case FieldAction::on: return "on";
  }
  return "?";
}

std::optional<FieldAction> parse_field_action(std::string_view text) {
  if (text == "set") return FieldAction::set;
  if (text == "invert") return FieldAction::invert;
  if (text == "off") return FieldAction::off;
  if (text == "on") return FieldAction::on;
  return std::nullopt;
}

HyperfineSchedule build_schedule(std::span<const FieldEvent> events, double initial_level) {
  std::vector<ScheduleSegment> segments{ScheduleSegment{0.0, initial_level, 0.0}};
  double last_nonzero = initial_level;
  double prev_t = -std::numeric_limits<double>::infinity();
  const FieldEvent* prev_event = nullptr;

  for (std::size_t i = 0; i < events.size(); ++i) {
    const FieldEvent& ev = events[i];
    const std::string where = "events[" + std::to_string(i) + "]";
    if (std::isnan(ev.t)) throw InvalidInput(where + ".t is NaN");
    if (ev.t < prev_t) throw InvalidInput(where + ": event times must be non-decreasing");
    if (ev.t == prev_t && prev_event != nullptr) {
      if (*prev_event == ev) continue;
      throw InvalidInput(where + ": conflicting actions at t = " + std::to_string(ev.t));
    }
    if (ev.ramp_ns < 0.0) throw InvalidInput(where + ".ramp_ns must be >= 0");

    const double current = segments.back().delta_b;
    double next = current;
    switch (ev.action) {
      case FieldAction::set:
        if (!ev.level) throw InvalidInput(where + ": 'set' requires a level");
        next = *ev.level;
        break;
      case FieldAction::invert:
        if (current == 0.0) throw InvalidInput(where + ": cannot invert while the field is off");
        next = -current;
        break;
      case FieldAction::off:
        next = 0.0;
        break;
      case FieldAction::on:
        next = ev.level.value_or(last_nonzero);
        if (next == 0.0) throw InvalidInput(where + ": 'on' has no level to restore");
        break;
    }
    if (!std::isfinite(next)) throw InvalidInput(where + ": non-finite level");
    if (next != 0.0) last_nonzero = next;

    if (ev.t <= 0.0) {
      segments.front().delta_b = next;
    } else {
      segments.push_back(ScheduleSegment{ev.t, next, ev.ramp_ns});
    }
    prev_t = ev.t;
    prev_event = &ev;
  }
  return HyperfineSchedule(std::move(segments));
}

}  // namespace nfsent
