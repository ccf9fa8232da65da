#pragma once

#include <stdexcept>
#include <string>

namespace fskellam {

/// Argument outside the mathematical domain of an operation (bad order,
/// non-positive intensity, ...). Treated as a usage error by the CLI.
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Base class for failures of a numeric procedure on valid input.
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Result does not fit in a double; use the log-domain variant instead.
class OverflowError : public NumericError {
 public:
  using NumericError::NumericError;
};

class NonConvergenceError : public NumericError {
 public:
  using NumericError::NumericError;
};

/// A Monte Carlo tail cell had too few hits to estimate a log-probability.
class InsufficientHitsError : public NumericError {
 public:
  using NumericError::NumericError;
};

}  // namespace fskellam
