#include "nfsent/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <vector>

#include "nfsent/errors.hpp"

namespace nfsent {

namespace {

constexpr double kWidth = 800.0;
constexpr double kHeight = 400.0;
constexpr double kLeft = 70.0;
constexpr double kRight = 20.0;
constexpr double kTop = 20.0;
constexpr double kBottom = 50.0;
constexpr std::size_t kMaxBuckets = 1500;

std::string fmt(double v, int digits = 2) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

struct Frame {
  double t0, t1, y0, y1;
  double x(double t) const { return kLeft + (t - t0) / (t1 - t0) * (kWidth - kLeft - kRight); }
  double y(double v) const {
    return kTop + (y1 - v) / (y1 - y0) * (kHeight - kTop - kBottom);
  }
};

// Min/max per bucket keeps narrow peaks and nodes visible after decimation.
std::string polyline(const Frame& f, const std::vector<double>& t, const std::function<double(std::size_t)>& value,
                     const std::string& style) {
  const std::size_t n = t.size();
  const std::size_t per = std::max<std::size_t>(1, (n + kMaxBuckets - 1) / kMaxBuckets);
  std::ostringstream pts;
  for (std::size_t b = 0; b < n; b += per) {
    const std::size_t e = std::min(n, b + per);
    std::size_t lo = b, hi = b;
    for (std::size_t i = b; i < e; ++i) {
      if (value(i) < value(lo)) lo = i;
      if (value(i) > value(hi)) hi = i;
    }
    const std::size_t first = std::min(lo, hi), second = std::max(lo, hi);
    pts << fmt(f.x(t[first])) << ',' << fmt(f.y(value(first))) << ' ';
    if (second != first) pts << fmt(f.x(t[second])) << ',' << fmt(f.y(value(second))) << ' ';
  }
  std::string p = pts.str();
  if (!p.empty()) p.pop_back();
  return "<polyline fill=\"none\" " + style + " points=\"" + p + "\"/>\n";
}

std::string header(const TraceTable& table, const std::string& title) {
  std::ostringstream o;
  o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fmt(kWidth, 0) << "\" height=\""
    << fmt(kHeight, 0) << "\" viewBox=\"0 0 " << fmt(kWidth, 0) << ' ' << fmt(kHeight, 0) << "\">\n";
  o << "<!-- config_hash=" << table.config_hash << " -->\n";
  o << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  o << "<text x=\"" << fmt(kWidth / 2, 0) << "\" y=\"14\" font-size=\"12\" text-anchor=\"middle\">"
    << title << "</text>\n";
  return o.str();
}

double nice_step(double span) {
  const double raw = span / 8.0;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  for (double m : {1.0, 2.0, 5.0, 10.0}) {
    if (m * mag >= raw) return m * mag;
  }
  return 10.0 * mag;
}

std::string time_axis(const Frame& f) {
  std::ostringstream o;
  const double yb = kHeight - kBottom;
  o << "<line x1=\"" << fmt(kLeft) << "\" y1=\"" << fmt(yb) << "\" x2=\"" << fmt(kWidth - kRight)
    << "\" y2=\"" << fmt(yb) << "\" stroke=\"black\"/>\n";
  const double step = nice_step(f.t1 - f.t0);
  for (double t = std::ceil(f.t0 / step) * step; t <= f.t1 + 1e-9; t += step) {
    o << "<line x1=\"" << fmt(f.x(t)) << "\" y1=\"" << fmt(yb) << "\" x2=\"" << fmt(f.x(t)) << "\" y2=\""
      << fmt(yb + 5) << "\" stroke=\"black\"/>\n";
    o << "<text x=\"" << fmt(f.x(t)) << "\" y=\"" << fmt(yb + 18) << "\" font-size=\"11\" text-anchor=\"middle\">"
      << fmt(t, step < 1.0 ? 1 : 0) << "</text>\n";
  }
  o << "<text x=\"" << fmt((kLeft + kWidth - kRight) / 2) << "\" y=\"" << fmt(kHeight - 10)
    << "\" font-size=\"12\" text-anchor=\"middle\">time (ns)</text>\n";
  o << "<line x1=\"" << fmt(kLeft) << "\" y1=\"" << fmt(kTop) << "\" x2=\"" << fmt(kLeft) << "\" y2=\""
    << fmt(yb) << "\" stroke=\"black\"/>\n";
  return o.str();
}

std::string y_tick(const Frame& f, double v, const std::string& label) {
  std::ostringstream o;
  o << "<line x1=\"" << fmt(kLeft - 5) << "\" y1=\"" << fmt(f.y(v)) << "\" x2=\"" << fmt(kLeft) << "\" y2=\""
    << fmt(f.y(v)) << "\" stroke=\"black\"/>\n";
  o << "<text x=\"" << fmt(kLeft - 8) << "\" y=\"" << fmt(f.y(v) + 4) << "\" font-size=\"11\" text-anchor=\"end\">"
    << label << "</text>\n";
  return o.str();
}

void require_rows(const TraceTable& table) {
  if (table.size() < 2) throw InvalidInput("plot: traces need at least two rows");
}

}  // namespace

std::string render_intensity_svg(const TraceTable& table) {
  require_rows(table);
  constexpr double kDecades = 6.0;
  double peak = 0.0;
  for (std::size_t i = 0; i < table.size(); ++i) peak = std::max({peak, table.i_fwd[i], table.i_bwd[i]});
  const double scale = peak > 0.0 ? 1.0 / peak : 1.0;
  auto logv = [&](double v) { return std::max(-kDecades, std::log10(std::max(v * scale, 1e-300))); };

  const Frame f{table.t_ns.front(), table.t_ns.back(), -kDecades, 0.0};
  std::string out = header(table, "Scattered intensity (log scale, normalized)");
  out += time_axis(f);
  for (int d = 0; d >= -static_cast<int>(kDecades); --d) out += y_tick(f, d, "1e" + std::to_string(d));
  out += polyline(f, table.t_ns, [&](std::size_t i) { return logv(table.i_fwd[i]); },
                  "stroke=\"#d62728\" stroke-width=\"1.2\"");
  out += polyline(f, table.t_ns, [&](std::size_t i) { return logv(table.i_bwd[i]); },
                  "stroke=\"black\" stroke-width=\"1.2\" stroke-dasharray=\"6,4\"");
  out += "</svg>\n";
  return out;
}

std::string render_amplitude_svg(const TraceTable& table) {
  require_rows(table);
  double peak = 0.0;
  for (std::size_t i = 0; i < table.size(); ++i) {
    peak = std::max({peak, std::abs(table.re_fwd[i]), std::abs(table.re_bwd[i])});
  }
  const double scale = peak > 0.0 ? 1.0 / peak : 1.0;
  const Frame f{table.t_ns.front(), table.t_ns.back(), -1.1, 1.1};

  std::string out = header(table, "Field amplitudes (real part, normalized) and hyperfine schedule");
  out += time_axis(f);
  for (double v : {-1.0, -0.5, 0.0, 0.5, 1.0}) out += y_tick(f, v, fmt(v, 1));
  out += polyline(f, table.t_ns, [&](std::size_t i) { return table.re_fwd[i] * scale; },
                  "stroke=\"#d62728\" stroke-width=\"1.2\"");
  out += polyline(f, table.t_ns, [&](std::size_t i) { return table.re_bwd[i] * scale; },
                  "stroke=\"black\" stroke-width=\"1.2\" stroke-dasharray=\"6,4\"");

  if (!table.schedule.empty()) {
    double level_peak = 0.0;
    for (const auto& s : table.schedule) level_peak = std::max(level_peak, std::abs(s.delta_b));
    const double ls = level_peak > 0.0 ? 1.0 / level_peak : 1.0;
    std::ostringstream pts;
    for (std::size_t k = 0; k < table.schedule.size(); ++k) {
      const double start = std::max(f.t0, table.schedule[k].t_start);
      const double stop = k + 1 < table.schedule.size() ? table.schedule[k + 1].t_start : f.t1;
      if (stop < f.t0 || start > f.t1) continue;
      const double y = f.y(table.schedule[k].delta_b * ls);
      pts << fmt(f.x(start)) << ',' << fmt(y) << ' ' << fmt(f.x(std::min(stop, f.t1))) << ',' << fmt(y) << ' ';
    }
    std::string p = pts.str();
    if (!p.empty()) p.pop_back();
    out += "<polyline fill=\"none\" stroke=\"#2ca02c\" stroke-width=\"1.2\" stroke-dasharray=\"8,3,2,3\" points=\"" +
           p + "\"/>\n";
  }
  out += "</svg>\n";
  return out;
}

}  // namespace nfsent
