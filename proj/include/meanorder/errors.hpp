#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace meanorder {

/// Invalid input: unknown element ids, malformed relations, parameters
/// outside the supported range.
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A stated hypothesis of an operation does not hold for the given
/// arguments. The message names the failing inequality.
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A mean produced a non-finite value. Carries the offending point.
class EvaluationError : public std::runtime_error {
 public:
  EvaluationError(const std::string& what, std::vector<double> point)
      : std::runtime_error(what), point_(std::move(point)) {}

  const std::vector<double>& point() const noexcept { return point_; }

 private:
  std::vector<double> point_;
};

/// The requested computation exceeds the configured evaluation budget.
class BudgetError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace meanorder
