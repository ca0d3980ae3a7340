#pragma once

#include <stdexcept>
#include <string>

namespace bautin {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A documented precondition does not hold (dimension mismatch, nonpositive
/// radius, undefined phase, state outside a coordinate chart).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// The numerics failed: step-size underflow, non-finite state, no real root,
/// no sign change for a bracketing solver.
class NumericError : public Error {
 public:
  using Error::Error;
};

/// Malformed or inconsistent user configuration.
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace bautin
