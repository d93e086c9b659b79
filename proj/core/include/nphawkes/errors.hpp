#pragma once

#include <stdexcept>
#include <string>

namespace nphawkes {

// Base class for everything this library throws on purpose.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input files: CSV, JSON, dates. Messages carry row/field context.
class ParseError : public Error {
 public:
  using Error::Error;
};

// Invalid configuration: bad bin edges, missing columns, out-of-range flags.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// Numerically degenerate fit states (e.g. zero intensity at an event).
class FitError : public Error {
 public:
  using Error::Error;
};

// Argument outside a function's mathematical domain.
class DomainError : public Error {
 public:
  using Error::Error;
};

}  // namespace nphawkes
