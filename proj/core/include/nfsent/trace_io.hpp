#pragma once

#include <cstdint>
#include <istream>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "nfsent/analysis.hpp"
#include "nfsent/schedule.hpp"
#include "nfsent/solver.hpp"

namespace nfsent {

inline constexpr const char* kTraceCsvHeader =
    "t_ns,re_fwd,im_fwd,re_bwd,im_bwd,i_fwd,i_bwd,mirror_in_beam";

/// Writes traces as CSV: two `#` comment lines (config hash, then the aligned schedule as
/// `t:delta_b` pairs) followed by kTraceCsvHeader and one row per sample. The forward columns hold
/// the detected amplitude. Floats carry 9 significant digits.
void write_traces_csv(std::ostream& out, const TraceSet& traces, const HyperfineSchedule& schedule);

/// Trace table as read back from CSV.
struct TraceTable {
  std::string config_hash;
  std::vector<ScheduleSegment> schedule;
  std::vector<double> t_ns, re_fwd, im_fwd, re_bwd, im_bwd, i_fwd, i_bwd;
  std::vector<std::uint8_t> mirror_in_beam;

  std::size_t size() const { return t_ns.size(); }
};

/// Throws InvalidInput naming the offending line on malformed input or when no rows are present.
TraceTable read_traces_csv(std::istream& in);

void write_pattern_csv(std::ostream& out, std::span<const ExcitationPattern> patterns,
                       std::span<const double> times_ns, const std::string& config_hash);

/// printf("%.9g").
std::string format_g9(double v);

}  // namespace nfsent
