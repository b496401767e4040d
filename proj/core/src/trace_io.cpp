#include "nfsent/trace_io.hpp"

#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <sstream>

#include "nfsent/errors.hpp"

namespace nfsent {

std::string format_g9(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

void write_traces_csv(std::ostream& out, const TraceSet& traces, const HyperfineSchedule& schedule) {
  out << "# nfsent traces schema=1 config_hash=" << traces.config_hash << "\n";
  out << "# schedule";
  for (const auto& s : schedule.segments()) {
    out << ' ' << format_g9(s.t_start) << ':' << format_g9(s.delta_b);
  }
  out << "\n" << kTraceCsvHeader << "\n";
  for (std::size_t i = 0; i < traces.size(); ++i) {
    const Complex f = traces.fwd_detected[i];
    const Complex b = traces.bwd_amp[i];
    out << format_g9(traces.t_ns[i]) << ',' << format_g9(f.real()) << ',' << format_g9(f.imag())
        << ',' << format_g9(b.real()) << ',' << format_g9(b.imag()) << ',' << format_g9(std::norm(f))
        << ',' << format_g9(std::norm(b)) << ',' << static_cast<int>(traces.mirror_in_beam[i])
        << "\n";
  }
}

namespace {

double parse_double(const std::string& field, std::size_t line_no) {
  if (field.empty()) throw InvalidInput("traces csv line " + std::to_string(line_no) + ": empty field");
  char* end = nullptr;
  errno = 0;
  const double v = std::strtod(field.c_str(), &end);
  if (end != field.c_str() + field.size() || errno == ERANGE) {
    throw InvalidInput("traces csv line " + std::to_string(line_no) + ": bad number '" + field + "'");
  }
  return v;
}

}  // namespace

TraceTable read_traces_csv(std::istream& in) {
  TraceTable table;
  std::string line;
  std::size_t line_no = 0;
  bool header_seen = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line.front() == '#') {
      if (const auto pos = line.find("config_hash="); pos != std::string::npos) {
        table.config_hash = line.substr(pos + 12);
      } else if (line.rfind("# schedule", 0) == 0) {
        std::istringstream ss(line.substr(10));
        std::string pair;
        while (ss >> pair) {
          const auto colon = pair.find(':');
          if (colon == std::string::npos) {
            throw InvalidInput("traces csv line " + std::to_string(line_no) + ": bad schedule entry");
          }
          table.schedule.push_back({parse_double(pair.substr(0, colon), line_no),
                                    parse_double(pair.substr(colon + 1), line_no), 0.0});
        }
      }
      continue;
    }
    if (!header_seen) {
      if (line != kTraceCsvHeader) {
        throw InvalidInput("traces csv line " + std::to_string(line_no) + ": unexpected header");
      }
      header_seen = true;
      continue;
    }
    std::vector<std::string> fields;
    std::size_t start = 0;
    while (true) {
      const auto comma = line.find(',', start);
      fields.push_back(line.substr(start, comma - start));
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
    if (fields.size() != 8) {
      throw InvalidInput("traces csv line " + std::to_string(line_no) + ": expected 8 fields, got " +
                         std::to_string(fields.size()));
    }
    table.t_ns.push_back(parse_double(fields[0], line_no));
    table.re_fwd.push_back(parse_double(fields[1], line_no));
    table.im_fwd.push_back(parse_double(fields[2], line_no));
    table.re_bwd.push_back(parse_double(fields[3], line_no));
    table.im_bwd.push_back(parse_double(fields[4], line_no));
    table.i_fwd.push_back(parse_double(fields[5], line_no));
    table.i_bwd.push_back(parse_double(fields[6], line_no));
    if (fields[7] != "0" && fields[7] != "1") {
      throw InvalidInput("traces csv line " + std::to_string(line_no) + ": mirror_in_beam must be 0 or 1");
    }
    table.mirror_in_beam.push_back(fields[7] == "1" ? 1 : 0);
    if (table.size() > 1 && !(table.t_ns.back() > table.t_ns[table.size() - 2])) {
      throw InvalidInput("traces csv line " + std::to_string(line_no) + ": time not increasing");
    }
  }
  if (!header_seen) throw InvalidInput("traces csv: missing header");
  if (table.size() == 0) throw InvalidInput("traces csv: no data rows");
  return table;
}

void write_pattern_csv(std::ostream& out, std::span<const ExcitationPattern> patterns,
                       std::span<const double> times_ns, const std::string& config_hash) {
  out << "# nfsent pattern schema=1 config_hash=" << config_hash << "\n";
  out << "t_ns,s_angstrom,density\n";
  for (std::size_t p = 0; p < patterns.size(); ++p) {
    const auto& pat = patterns[p];
    for (std::size_t i = 0; i < pat.s_angstrom.size(); ++i) {
      out << format_g9(times_ns[p]) << ',' << format_g9(pat.s_angstrom[i]) << ','
          << format_g9(pat.density[i]) << "\n";
    }
  }
}

}  // namespace nfsent
