#pragma once

#include <stdexcept>
#include <string>

namespace kerrecs {

/// Parameters outside the domain where a formula is defined.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Two states (or a state and an operator) with different truncations.
class DimensionMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A truncated series did not reach its declared tolerance.
class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Valid parameters for which no analytic route exists (irrational chi,
/// non-vacuum second input on the interferometer, ...).
class UnsupportedParameters : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace kerrecs
