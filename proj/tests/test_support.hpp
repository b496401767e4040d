#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <span>
#include <vector>

#include "nfsent/model.hpp"
#include "nfsent/presets.hpp"
#include "nfsent/solver.hpp"

namespace nfsent::testing {

inline constexpr double kGamma = 1.0 / 141.1;
inline constexpr double kDelta = 30.0 / 141.1;

/// Largest |a_i - b_i| over the largest |b_i|.
inline double max_rel_diff(std::span<const Complex> a, std::span<const Complex> b) {
  double diff = 0.0, scale = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    diff = std::max(diff, std::abs(a[i] - b[i]));
    scale = std::max(scale, std::abs(b[i]));
  }
  return scale > 0.0 ? diff / scale : diff;
}

/// L2 distance of a coarse trace to every `stride`-th sample of a fine one, relative to the fine.
inline double strided_rel_l2(std::span<const Complex> coarse, std::span<const Complex> fine,
                             std::size_t stride) {
  double diff = 0.0, norm = 0.0;
  for (std::size_t i = 0; i < coarse.size() && i * stride < fine.size(); ++i) {
    diff += std::norm(coarse[i] - fine[i * stride]);
    norm += std::norm(fine[i * stride]);
  }
  return std::sqrt(diff / norm);
}

inline RunResult run(const ScenarioConfig& c) { return run_scenario(validate_scenario(c)); }

/// Thin sample, no mirror, constant field.
inline ScenarioConfig single_pass(double xi = 0.01) {
  PresetParams p;
  p.xi = xi;
  return make_preset("single_pass", p);
}

}  // namespace nfsent::testing
