#pragma once

#include <stdexcept>
#include <string>

namespace dsqg {

/// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument outside an operation's domain (bad exponent, negative time, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Field shapes or domains do not match.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// The requested evaluation cannot be resolved with the available modes or
/// grid points. `required` carries the resolution that would be needed when
/// it is known (0 otherwise).
class ResolutionError : public Error {
 public:
  ResolutionError(const std::string& what, int required = 0)
      : Error(what), required_(required) {}
  int required() const noexcept { return required_; }

 private:
  int required_;
};

class QuadratureError : public Error {
 public:
  using Error::Error;
};

/// Solver state became non-finite or exceeded the blow-up threshold.
class BlowUpError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace dsqg
