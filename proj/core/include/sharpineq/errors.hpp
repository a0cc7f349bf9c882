#pragma once

#include <stdexcept>
#include <string>

namespace sharpineq {

/// Raised when an argument lies outside the domain of a formula or map.
class DomainError : public std::invalid_argument {
public:
  explicit DomainError(const std::string& what) : std::invalid_argument(what) {}
};

/// Raised when an iterative numerical routine stops before meeting its
/// tolerance. Carries the best value reached so far.
class ConvergenceError : public std::runtime_error {
public:
  ConvergenceError(const std::string& what, double partial_value, double error_estimate)
      : std::runtime_error(what), partial_value_(partial_value), error_estimate_(error_estimate) {}

  double partial_value() const noexcept { return partial_value_; }
  double error_estimate() const noexcept { return error_estimate_; }

private:
  double partial_value_;
  double error_estimate_;
};

} // namespace sharpineq
