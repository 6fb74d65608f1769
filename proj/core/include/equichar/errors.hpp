#pragma once

#include <stdexcept>
#include <string>

namespace equichar {

/// Thrown when a series is applied outside its convergence disc, or a closed
/// formula is evaluated at a pole. Carries the offending magnitude.
class DomainError : public std::domain_error {
 public:
  DomainError(const std::string& what, double value)
      : std::domain_error(what), value_(value) {}
  double value() const noexcept { return value_; }

 private:
  double value_;
};

/// Profile data violates an SKR invariant (Q <= 0, tau out of range, ...).
class ProfileError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A closed formula hit a removable or essential singularity (alpha = 0).
class SingularInputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed or inconsistent run configuration.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A numerical procedure failed to converge or produced a non-finite value.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace equichar
