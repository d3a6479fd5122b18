#pragma once

#include <stdexcept>
#include <string>

namespace qkde {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class SingularMatrixError : public Error {
 public:
  using Error::Error;
};

/// A documented precondition was violated by the caller.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// Integration horizon is empty, reversed, or non-finite, or the step is not
/// positive.
class InvalidHorizonError : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

/// Initial attitude quaternion is not unit norm within tolerance.
class NonUnitStateError : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

/// Profile evaluated outside the range covered by its samples.
class OutOfRangeError : public Error {
 public:
  using Error::Error;
};

/// An internal identity that must hold by construction did not.
class ConsistencyError : public Error {
 public:
  using Error::Error;
};

/// Data cannot support the requested estimate (zero errors, constant series...).
class DegenerateError : public Error {
 public:
  using Error::Error;
};

/// Malformed or invalid scenario configuration.
class ConfigError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace qkde
