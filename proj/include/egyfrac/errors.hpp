#pragma once

#include <stdexcept>
#include <string>

namespace egyfrac {

// Base of every error the library raises. The CLI maps the concrete kind to
// an exit code, so keep the hierarchy flat.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument outside the mathematical domain of the operation (n < 2, q not a
/// prime power, violated precondition on a set).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Argument beyond a table or configured bound.
class RangeError : public Error {
 public:
  using Error::Error;
};

/// Memory or time budget would be exceeded.
class ResourceError : public Error {
 public:
  using Error::Error;
};

/// A procedure hit a state its analytic guarantee rules out only
/// asymptotically (e.g. pruning found nothing left to remove).
class InfeasibleError : public Error {
 public:
  using Error::Error;
};

/// Floating evaluation drifted beyond its rounding guard.
class NumericalError : public Error {
 public:
  using Error::Error;
};

/// A verification ran out of budget before reaching a verdict.
class InconclusiveError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace egyfrac
