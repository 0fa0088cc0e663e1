#pragma once

#include <stdexcept>
#include <string>

namespace qi {

/// Base class for all errors raised by this library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Incompatible matrix shapes or tensor dimensions.
class ShapeError : public Error {
 public:
  using Error::Error;
};

/// Mathematically invalid request (empty eigenspace, missing root, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A value failed its construction invariant.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// Numerical routine failed to converge.
class NumericError : public Error {
 public:
  using Error::Error;
};

}  // namespace qi
