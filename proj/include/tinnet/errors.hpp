#pragma once

#include <stdexcept>
#include <string>

namespace tinnet {

// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// An iterative numerical method ran out of budget before meeting its
// tolerance. The best estimate and its error bound are kept so callers can
// decide whether the partial answer is usable.
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, double best_estimate, double error_bound)
      : std::runtime_error(what), best_estimate_(best_estimate), error_bound_(error_bound) {}

  double best_estimate() const noexcept { return best_estimate_; }
  double error_bound() const noexcept { return error_bound_; }

 private:
  double best_estimate_;
  double error_bound_;
};

// Series whose terms stop shrinking (or overflow) before the sum settles.
class DivergenceError : public ConvergenceError {
 public:
  using ConvergenceError::ConvergenceError;
};

// Conditioning on an event whose probability is numerically zero.
class DegenerateConditioningError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// The high-SNR closed forms only exist for alpha = 4 and M = 1.
class UnsupportedRegimeError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Parameter record violates one of its invariants; names the offending field.
class InvalidParameterError : public std::invalid_argument {
 public:
  InvalidParameterError(std::string field, const std::string& what)
      : std::invalid_argument(field + ": " + what), field_(std::move(field)) {}

  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

}  // namespace tinnet
