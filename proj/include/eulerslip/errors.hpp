#pragma once

#include <stdexcept>
#include <string>

namespace eulerslip {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Parameters outside a chart's range, malformed directions, bad steps.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Tangent vectors of the parametrization collapse (|dX/dxi| < 1e-14).
class SingularChartError : public Error {
 public:
  using Error::Error;
};

/// Normal coordinate crosses a focal point: 1 + kappa_j * xi3 <= 0.
class DegenerateCoordinatesError : public Error {
 public:
  using Error::Error;
};

/// Boundary vorticity profile vanishes identically after mean removal.
class DegenerateBetaError : public Error {
 public:
  using Error::Error;
};

/// Stream profile fails to close at the end of the meridian.
class ConstraintViolationError : public Error {
 public:
  using Error::Error;
};

/// Stream function divided by r^2 is unbounded at the symmetry axis.
class RegularityError : public Error {
 public:
  using Error::Error;
};

/// Field handed to a verification routine is not admissible.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  ConfigError(std::string key_path, const std::string& what)
      : Error(key_path.empty() ? what : key_path + ": " + what), key_path_(std::move(key_path)) {}

  const std::string& key_path() const { return key_path_; }

 private:
  std::string key_path_;
};

}  // namespace eulerslip
