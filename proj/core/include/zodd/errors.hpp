#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace zodd {

/// Base class of every exception raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A precondition on an argument was violated.
class ArgumentError : public Error {
 public:
  using Error::Error;
};

/// The environment cannot provide the requested analytic quantity.
class UnsupportedEnvironment : public Error {
 public:
  using Error::Error;
};

/// An iterative numerical routine failed or a statistic is undefined.
class NumericalError : public Error {
 public:
  using Error::Error;
};

/// The classifier has no feature weights, so the decision boundary cannot be reached.
class DegenerateClassifier : public Error {
 public:
  using Error::Error;
};

/// The oracle refused a draw because its sample limit would be exceeded.
///
/// `wasted` counts draws that were consumed by the failing operation and whose
/// results were discarded.
class BudgetError : public Error {
 public:
  BudgetError(std::uint64_t consumed, std::uint64_t limit, std::uint64_t wasted = 0)
      : Error("sample budget exhausted: consumed " + std::to_string(consumed) + " of " +
              std::to_string(limit) + " draws (" + std::to_string(wasted) +
              " discarded by the failing call)"),
        consumed_(consumed),
        limit_(limit),
        wasted_(wasted) {}

  std::uint64_t consumed() const noexcept { return consumed_; }
  std::uint64_t limit() const noexcept { return limit_; }
  std::uint64_t wasted() const noexcept { return wasted_; }

 private:
  std::uint64_t consumed_;
  std::uint64_t limit_;
  std::uint64_t wasted_;
};

}  // namespace zodd
