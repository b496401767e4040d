#pragma once

#include <complex>
#include <cstddef>
#include <deque>
#include <optional>

namespace nfsent {

/// Time-stamped history of the forward field at the rear face, read back with a delay.
/// Samples must be pushed in non-decreasing time order.
class MirrorDelayLine {
 public:
  using Complex = std::complex<double>;

  void push(double t, Complex value);

  /// Linear interpolation at time t. Empty when t precedes the oldest sample (or the line is
  /// empty); the newest value is held for t beyond the last sample.
  std::optional<Complex> sample(double t) const;

  /// Drops samples that can no longer bracket any query at or after t.
  void discard_before(double t);

  std::size_t size() const { return samples_.size(); }
  bool empty() const { return samples_.empty(); }
  void clear() { samples_.clear(); }

  bool operator==(const MirrorDelayLine&) const = default;

 private:
  struct Sample {
    double t;
    Complex value;
    bool operator==(const Sample&) const = default;
  };
  std::deque<Sample> samples_;
};

}  // namespace nfsent
