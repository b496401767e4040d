#pragma once

#include <complex>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "nfsent/solver.hpp"

namespace nfsent {

struct Intensities {
  std::vector<double> fwd;  ///< |fwd_detected|^2
  std::vector<double> bwd;  ///< |bwd_amp|^2
};

Intensities intensities(const TraceSet& traces);

enum class EntanglementClass { symmetric, antisymmetric, indeterminate };
const char* to_string(EntanglementClass c);

/// Relative weight and phase of the backward and forward photon branches over a time window.
struct EntanglementReport {
  double t1 = 0.0;
  double t2 = 0.0;
  double balance = 0.0;       ///< backward energy / forward detected energy
  double mean_phase = 0.0;    ///< in (-pi, pi]
  double phase_spread = 0.0;  ///< circular standard deviation, rad
  EntanglementClass classification = EntanglementClass::indeterminate;
};

/// The phase is the energy-weighted circular mean of arg(bwd * conj(fwd_detected)) with both
/// envelopes referenced to the sample faces. Throws InvalidInput if the window holds no samples.
EntanglementReport entanglement_report(const TraceSet& traces, double t1, double t2);

EntanglementClass classify(double mean_phase, double phase_spread);

/// Forward and backward envelope of one coherence, e.g. depth averages of f31 and b31.
struct BranchPair {
  Complex forward;
  Complex backward;
};

/// Excitation density sum_j |forward_j e^{iks} + backward_j e^{-iks}|^2 over one carrier period
/// s in [0, 2 pi / k). The transitions 3-1 and 4-2 end in distinct states and add incoherently.
struct ExcitationPattern {
  std::vector<double> s_angstrom;
  std::vector<double> density;
  double period_angstrom = 0.0;  ///< 2 pi / k
  double wave_number = 0.0;      ///< k, 1/angstrom

  double cell() const { return period_angstrom / static_cast<double>(s_angstrom.size()); }
};

ExcitationPattern standing_wave_pattern(std::span<const BranchPair> branches, double k,
                                        std::size_t n_s = 512);

/// Pattern of the depth-averaged coherences of a snapshot. Throws InvalidInput when no
/// excitation is stored.
ExcitationPattern excitation_pattern(const CoherenceSnapshot& snapshot, double k,
                                     std::size_t n_s = 512);

/// One pattern per depth point, for inspection.
std::vector<ExcitationPattern> per_depth_patterns(const CoherenceSnapshot& snapshot, double k,
                                                  std::size_t n_s = 512);

/// Position of the (first) global maximum.
double pattern_peak_position(const ExcitationPattern& pattern);
/// (max - min) / (max + min); 0 for a flat pattern.
double pattern_contrast(const ExcitationPattern& pattern);
/// Mean spacing of the density maxima over one period, treating the grid as periodic.
/// Empty for a flat pattern.
std::optional<double> pattern_modulation_period(const ExcitationPattern& pattern);

/// Peak total intensity inside [t_off + 1, t_on - 1] over the peak in the 5 ns before t_off.
double storage_suppression(const TraceSet& traces, double t_off, double t_on);

/// Mean spacing of the intensity nodes in [t1, t2]. A node is the minimum of a contiguous run of
/// samples below `node_fraction` of the window maximum; runs touching the window edge count.
/// Throws InvalidInput when fewer than two nodes are found.
double beat_period(std::span<const double> t_ns, std::span<const double> intensity, double t1,
                   double t2, double node_fraction = 0.05);

}  // namespace nfsent
