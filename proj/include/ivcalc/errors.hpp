#pragma once

#include <stdexcept>
#include <string>

namespace ivc {

// Base of every error raised by the library. Each subclass maps to one
// failure mode so callers (and the CLI) can dispatch on type.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidInterval : public Error {
 public:
  using Error::Error;
};

class DivisionByIntervalContainingZero : public Error {
 public:
  DivisionByIntervalContainingZero()
      : Error("division by an interval containing zero") {}
};

class NotComparableError : public Error {
 public:
  using Error::Error;
};

class DimensionError : public Error {
 public:
  using Error::Error;
};

class DomainError : public Error {
 public:
  using Error::Error;
};

class InvalidIvf : public Error {
 public:
  using Error::Error;
};

class PreconditionFailed : public Error {
 public:
  using Error::Error;
};

class NotLinearCandidate : public Error {
 public:
  using Error::Error;
};

class NotComparableFamily : public Error {
 public:
  using Error::Error;
};

class InfeasiblePoint : public Error {
 public:
  using Error::Error;
};

class ZeroDirection : public Error {
 public:
  ZeroDirection() : Error("direction must be nonzero") {}
};

class LinearIndependenceViolated : public Error {
 public:
  using Error::Error;
};

class SlacknessViolated : public Error {
 public:
  using Error::Error;
};

class NotSeparable : public Error {
 public:
  using Error::Error;
};

class ScaleExceeded : public Error {
 public:
  using Error::Error;
};

class EmptyBiasSet : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

class UnknownCaseId : public Error {
 public:
  using Error::Error;
};

}  // namespace ivc
