#pragma once

#include <stdexcept>
#include <string>

namespace solvstate {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument outside the mathematical domain of an operation (|xi| >= 1, x <= 0 for log-Gamma, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A tabulated spectrum was asked for a level it does not hold.
class OutOfRangeError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// A series or iteration failed to reach its tolerance and the caller asked for a hard failure.
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

class DimensionError : public Error {
 public:
  using Error::Error;
};

}  // namespace solvstate
