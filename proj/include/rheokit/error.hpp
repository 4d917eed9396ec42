#pragma once

#include <stdexcept>
#include <string>

namespace rheokit {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed arguments: empty/non-monotone grids, non-positive moduli, arity mismatch.
class InvalidInput : public Error {
 public:
  using Error::Error;
};

/// Argument outside the sampled range or the effective domain.
class OutOfRangeError : public Error {
 public:
  using Error::Error;
};

/// A closed form requested for a case it does not cover.
class UnsupportedMode : public Error {
 public:
  using Error::Error;
};

/// A monotone root solve could not bracket or resolve its root.
class NoConvergence : public Error {
 public:
  using Error::Error;
};

class IntegratorError : public NoConvergence {
 public:
  using NoConvergence::NoConvergence;
};

}  // namespace rheokit
