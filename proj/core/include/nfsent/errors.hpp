#pragma once

#include <stdexcept>
#include <string>

namespace nfsent {

/// Rejected input: a configuration, argument or file that violates a documented invariant.
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when the integrator state stops being finite.
class NumericalFailure : public std::runtime_error {
 public:
  NumericalFailure(const std::string& what, double time_ns)
      : std::runtime_error(what), time_ns_(time_ns) {}

  double time_ns() const noexcept { return time_ns_; }

 private:
  double time_ns_;
};

}  // namespace nfsent
