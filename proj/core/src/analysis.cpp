#include "nfsent/analysis.hpp"

#include <algorithm>
#include <array>
#include <limits>
#include <cmath>
#include <numbers>

#include "nfsent/errors.hpp"

namespace nfsent {

namespace {

constexpr double kPi = std::numbers::pi;

double wrap_phase(double phi) {
  phi = std::remainder(phi, 2.0 * kPi);
  return phi <= -kPi ? phi + 2.0 * kPi : phi;
}

// Trapezoidal mean over u in [0, 1].
Complex depth_average(const ComplexProfile& a) {
  const std::size_t n = a.size();
  Complex sum{};
  for (std::size_t i = 0; i < n; ++i) {
    const double w = (i == 0 || i + 1 == n) ? 0.5 : 1.0;
    sum += w * a[i];
  }
  return sum / static_cast<double>(n - 1);
}

}  // namespace

Intensities intensities(const TraceSet& traces) {
  Intensities out;
  out.fwd.reserve(traces.size());
  out.bwd.reserve(traces.size());
  for (std::size_t i = 0; i < traces.size(); ++i) {
    out.fwd.push_back(std::norm(traces.fwd_detected[i]));
    out.bwd.push_back(std::norm(traces.bwd_amp[i]));
  }
  return out;
}

const char* to_string(EntanglementClass c) {
  switch (c) {
    case EntanglementClass::symmetric: return "symmetric";
    case EntanglementClass::antisymmetric: return "antisymmetric";
    case EntanglementClass::indeterminate: return "indeterminate";
  }
  return "?";
}

EntanglementClass classify(double mean_phase, double phase_spread) {
  if (!(phase_spread < kPi / 8.0)) return EntanglementClass::indeterminate;
  if (std::abs(wrap_phase(mean_phase)) < kPi / 4.0) return EntanglementClass::symmetric;
  if (std::abs(wrap_phase(mean_phase - kPi)) < kPi / 4.0) return EntanglementClass::antisymmetric;
  return EntanglementClass::indeterminate;
}

EntanglementReport entanglement_report(const TraceSet& traces, double t1, double t2) {
  EntanglementReport r;
  r.t1 = t1;
  r.t2 = t2;
  double e_fwd = 0.0, e_bwd = 0.0, weight = 0.0;
  Complex z_sum{};
  std::size_t count = 0;
  for (std::size_t i = 0; i < traces.size(); ++i) {
    const double t = traces.t_ns[i];
    if (t < t1 || t > t2) continue;
    const Complex f = traces.fwd_detected[i];
    const Complex b = traces.bwd_amp[i];
    e_fwd += std::norm(f);
    e_bwd += std::norm(b);
    const Complex z = b * std::conj(f);
    z_sum += z;
    weight += std::abs(z);
    ++count;
  }
  if (count == 0) throw InvalidInput("entanglement_report: window contains no samples");

  if (e_fwd > 0.0) {
    r.balance = e_bwd / e_fwd;
  } else {
    r.balance = e_bwd > 0.0 ? std::numeric_limits<double>::infinity() : 0.0;
  }
  if (e_fwd == 0.0 || e_bwd == 0.0 || weight == 0.0) {
    r.phase_spread = kPi;
    r.classification = EntanglementClass::indeterminate;
    return r;
  }
  r.mean_phase = wrap_phase(std::arg(z_sum));
  const double resultant = std::min(1.0, std::abs(z_sum) / weight);
  r.phase_spread = resultant > 0.0 ? std::sqrt(-2.0 * std::log(resultant)) : kPi;
  r.classification = classify(r.mean_phase, r.phase_spread);
  return r;
}

ExcitationPattern standing_wave_pattern(std::span<const BranchPair> branches, double k,
                                        std::size_t n_s) {
  if (!(k > 0.0)) throw InvalidInput("standing_wave_pattern: k must be > 0");
  if (n_s < 4) throw InvalidInput("standing_wave_pattern: need at least 4 grid points");
  ExcitationPattern p;
  p.wave_number = k;
  p.period_angstrom = 2.0 * kPi / k;
  p.s_angstrom.resize(n_s);
  p.density.assign(n_s, 0.0);
  for (std::size_t i = 0; i < n_s; ++i) {
    const double s = p.period_angstrom * static_cast<double>(i) / static_cast<double>(n_s);
    p.s_angstrom[i] = s;
    const Complex carrier = std::polar(1.0, k * s);
    for (const auto& br : branches) {
      p.density[i] += std::norm(br.forward * carrier + br.backward * std::conj(carrier));
    }
  }
  return p;
}

ExcitationPattern excitation_pattern(const CoherenceSnapshot& snapshot, double k, std::size_t n_s) {
  if (snapshot.f31.size() < 2) throw InvalidInput("excitation_pattern: snapshot has no depth grid");
  const std::array<BranchPair, 2> branches{
      BranchPair{depth_average(snapshot.f31), depth_average(snapshot.b31)},
      BranchPair{depth_average(snapshot.f42), depth_average(snapshot.b42)}};
  bool any = false;
  for (const auto& b : branches) any = any || b.forward != Complex{} || b.backward != Complex{};
  if (!any) throw InvalidInput("excitation_pattern: snapshot holds no stored excitation");
  return standing_wave_pattern(branches, k, n_s);
}

std::vector<ExcitationPattern> per_depth_patterns(const CoherenceSnapshot& snapshot, double k,
                                                  std::size_t n_s) {
  std::vector<ExcitationPattern> out;
  out.reserve(snapshot.f31.size());
  for (std::size_t i = 0; i < snapshot.f31.size(); ++i) {
    const std::array<BranchPair, 2> branches{BranchPair{snapshot.f31[i], snapshot.b31[i]},
                                             BranchPair{snapshot.f42[i], snapshot.b42[i]}};
    out.push_back(standing_wave_pattern(branches, k, n_s));
  }
  return out;
}

double pattern_peak_position(const ExcitationPattern& pattern) {
  const auto it = std::max_element(pattern.density.begin(), pattern.density.end());
  return pattern.s_angstrom[static_cast<std::size_t>(std::distance(pattern.density.begin(), it))];
}

double pattern_contrast(const ExcitationPattern& pattern) {
  const auto [lo, hi] = std::minmax_element(pattern.density.begin(), pattern.density.end());
  const double sum = *hi + *lo;
  return sum > 0.0 ? (*hi - *lo) / sum : 0.0;
}

std::optional<double> pattern_modulation_period(const ExcitationPattern& pattern) {
  if (pattern_contrast(pattern) < 1e-9) return std::nullopt;
  const auto& d = pattern.density;
  const std::size_t n = d.size();
  std::vector<std::size_t> peaks;
  for (std::size_t i = 0; i < n; ++i) {
    const double prev = d[(i + n - 1) % n];
    const double next = d[(i + 1) % n];
    if (d[i] > prev && d[i] >= next) peaks.push_back(i);
  }
  if (peaks.empty()) return std::nullopt;
  // Peaks partition the periodic grid, so the mean spacing is period / count.
  return pattern.period_angstrom / static_cast<double>(peaks.size());
}

double storage_suppression(const TraceSet& traces, double t_off, double t_on) {
  if (traces.size() == 0) throw InvalidInput("storage_suppression: empty traces");
  const double t_first = traces.t_ns.front();
  const double t_last = traces.t_ns.back();
  if (!(t_off < t_on) || t_off < t_first || t_on > t_last) {
    throw InvalidInput("storage_suppression: need t_off < t_on inside the trace span");
  }
  const double s1 = t_off + 1.0, s2 = t_on - 1.0;
  const double p1 = std::max(t_first, t_off - 5.0), p2 = t_off;
  if (!(s2 > s1) || !(p2 > p1)) throw InvalidInput("storage_suppression: degenerate windows");

  double stored_peak = 0.0, before_peak = 0.0;
  std::size_t n_stored = 0, n_before = 0;
  for (std::size_t i = 0; i < traces.size(); ++i) {
    const double t = traces.t_ns[i];
    const double total = std::norm(traces.fwd_detected[i]) + std::norm(traces.bwd_amp[i]);
    if (t >= s1 && t <= s2) {
      stored_peak = std::max(stored_peak, total);
      ++n_stored;
    }
    if (t >= p1 && t <= p2) {
      before_peak = std::max(before_peak, total);
      ++n_before;
    }
  }
  if (n_stored == 0 || n_before == 0) throw InvalidInput("storage_suppression: degenerate windows");
  if (before_peak == 0.0) throw InvalidInput("storage_suppression: no signal before switch-off");
  return stored_peak / before_peak;
}

double beat_period(std::span<const double> t_ns, std::span<const double> intensity, double t1,
                   double t2, double node_fraction) {
  if (t_ns.size() != intensity.size()) throw InvalidInput("beat_period: length mismatch");
  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < t_ns.size(); ++i) {
    if (t_ns[i] >= t1 && t_ns[i] <= t2) idx.push_back(i);
  }
  if (idx.size() < 3) throw InvalidInput("beat_period: window holds fewer than 3 samples");
  double peak = 0.0;
  for (auto i : idx) peak = std::max(peak, intensity[i]);
  const double threshold = node_fraction * peak;

  std::vector<double> nodes;
  std::size_t k = 0;
  while (k < idx.size()) {
    if (!(intensity[idx[k]] < threshold)) {
      ++k;
      continue;
    }
    std::size_t best = k;
    std::size_t end = k;
    while (end < idx.size() && intensity[idx[end]] < threshold) {
      if (intensity[idx[end]] < intensity[idx[best]]) best = end;
      ++end;
    }
    double t_node = t_ns[idx[best]];
    if (best > 0 && best + 1 < idx.size()) {
      // Parabolic refinement through the neighbouring samples.
      const double y0 = intensity[idx[best - 1]], y1 = intensity[idx[best]], y2 = intensity[idx[best + 1]];
      const double denom = y0 - 2.0 * y1 + y2;
      if (denom > 0.0) {
        const double h = t_ns[idx[best + 1]] - t_ns[idx[best]];
        t_node += 0.5 * h * (y0 - y2) / denom;
      }
    }
    nodes.push_back(t_node);
    k = end;
  }
  if (nodes.size() < 2) throw InvalidInput("beat_period: fewer than two intensity minima in window");
  return (nodes.back() - nodes.front()) / static_cast<double>(nodes.size() - 1);
}

}  // namespace nfsent
