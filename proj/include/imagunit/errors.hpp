#pragma once

#include <stdexcept>
#include <string>

namespace imagunit {

/// Input outside the mathematical domain of an operation (non-finite angle,
/// non-positive step, imaginary square root).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Caller broke an operation's precondition (grid mismatch, η² ≠ −1, ...).
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A time step or grid configuration that the integrators refuse to run.
class ConfigurationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when an ODE trajectory would cross a singular point of its
/// right-hand side.
class SingularityError : public std::domain_error {
 public:
  SingularityError(const std::string& what, double angle)
      : std::domain_error(what), angle_(angle) {}
  double angle() const noexcept { return angle_; }

 private:
  double angle_;
};

/// Unknown registry key.
class LookupError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

}  // namespace imagunit
