#pragma once

#include <stdexcept>
#include <string>

namespace holodyn {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operands disagree on number of variables, truncation order or component count.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// A precondition on the mathematical input failed (zero constant term,
/// singular linear part, non-invariant axis, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Numerical integration failed: step underflow, step budget, or escape.
class NumericError : public Error {
 public:
  using Error::Error;
};

/// Malformed input documents or unknown presets.
class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace holodyn
