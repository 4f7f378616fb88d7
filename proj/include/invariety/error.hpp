#pragma once

#include <stdexcept>
#include <string>

namespace invariety {

// Base for every error raised by the library. Each subclass maps onto one
// failure class named in the operation contracts.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class SymbolMismatch : public Error {
 public:
  using Error::Error;
};

// An exact division had a nonzero remainder.
class InexactDivision : public Error {
 public:
  using Error::Error;
};

class ZeroDivisor : public Error {
 public:
  using Error::Error;
};

class DegenerateInput : public Error {
 public:
  using Error::Error;
};

// A map denominator vanished (within the pole tolerance) at the evaluation point.
class PoleError : public Error {
 public:
  PoleError(std::string which, const std::string& detail)
      : Error("pole: denominator '" + which + "' vanishes" + (detail.empty() ? "" : " (" + detail + ")")),
        which_(std::move(which)) {}

  const std::string& which() const noexcept { return which_; }

 private:
  std::string which_;
};

class ConvergenceError : public Error {
 public:
  using Error::Error;
};

class PrecisionAlarm : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

class UsageError : public Error {
 public:
  using Error::Error;
};

}  // namespace invariety
