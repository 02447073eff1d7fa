#pragma once

#include <stdexcept>
#include <string>

namespace bireg {

/// Thrown when an operation rejects its input (shape mismatch, invalid
/// exponent, non-finite entries, out-of-range indices).
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Thrown when a numerical kernel misses its accuracy contract.
/// Carries the offending residual so callers can report it.
class NumericalFailure : public std::runtime_error {
 public:
  NumericalFailure(const std::string& what, double residual)
      : std::runtime_error(what), residual_(residual) {}

  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

}  // namespace bireg
