#pragma once

#include <stdexcept>
#include <string>

namespace chancomp {

/// Base of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Mismatched or inconsistent dimensions.
class ShapeError : public Error {
 public:
  using Error::Error;
};

/// Matrix expected Hermitian (or PSD) but is not within tolerance.
class SymmetryError : public Error {
 public:
  using Error::Error;
};

/// Argument outside its mathematical domain (p < 1, lambda outside [0,1], ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Operator not invertible above the requested floor.
class SingularityError : public Error {
 public:
  using Error::Error;
};

/// Choi matrix with a significantly negative eigenvalue.
class NotCompletelyPositiveError : public Error {
 public:
  using Error::Error;
};

/// Malformed channel spec string, config file, or serialized object.
class ParseError : public Error {
 public:
  using Error::Error;
};

/// Invalid experiment configuration (empty grid, unknown metric, unwritable output).
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace chancomp
