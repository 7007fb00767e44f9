#pragma once

#include <stdexcept>
#include <string>

namespace logalg {

/// Malformed or out-of-contract input (maps to CLI exit code 2).
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Floating-point failure: non-convergence, overflow, failed cross-check
/// (maps to CLI exit code 3).
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A value that exists mathematically but does not fit in a double.
class RangeError : public NumericError {
 public:
  using NumericError::NumericError;
};

/// Passport merge whose result is not representable in the line/tail model.
class UnsupportedMerge : public InputError {
 public:
  using InputError::InputError;
};

}  // namespace logalg
