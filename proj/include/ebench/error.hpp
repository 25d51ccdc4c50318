#pragma once

#include <stdexcept>
#include <string>

namespace ebench {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A caller broke a documented precondition (length mismatch, bad parameter).
class ContractViolation : public Error {
 public:
  using Error::Error;
};

/// Argument outside the representable or admissible range.
class RangeError : public Error {
 public:
  using Error::Error;
};

/// Problem too large for an enumeration path.
class CapacityError : public Error {
 public:
  using Error::Error;
};

/// Unknown algorithm name or inconsistent configuration.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Not enough usable histogram bins for a fit.
class InsufficientData : public Error {
 public:
  using Error::Error;
};

/// A closed-form evaluation hit a degenerate denominator.
class DegenerateError : public Error {
 public:
  using Error::Error;
};

class UnsupportedConstruct : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace ebench
