#pragma once

#include <stdexcept>
#include <string>

namespace hclab {

/// Malformed input: wrong shapes, non-finite entries, unknown names.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Input is well formed but outside the mathematical domain of the operation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A documented precondition (commutation, support, monotonicity) fails.
class PreconditionError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Requested construction does not fit in the available dimensions.
class DimensionError : public std::length_error {
 public:
  using std::length_error::length_error;
};

/// A numerical procedure did not reach its tolerance. Carries the best residual seen.
class NumericError : public std::runtime_error {
 public:
  NumericError(const std::string& what, double residual)
      : std::runtime_error(what + " (residual " + std::to_string(residual) + ")"),
        residual_(residual) {}

  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

}  // namespace hclab
