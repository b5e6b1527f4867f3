#pragma once

#include <stdexcept>
#include <string>

namespace cqed {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A precondition on an argument was violated.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// A transition is exactly resonant with the resonator, so dispersive
/// quantities are undefined.
class ResonanceError : public Error {
 public:
  using Error::Error;
};

/// Delta_{i+1} + Delta_i = 0 with a nonzero two-photon coupling.
class TwoPhotonResonanceError : public Error {
 public:
  using Error::Error;
};

/// An iterative numerical routine failed to converge.
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

/// Configuration file problem; carries the 1-based line number (0 if the
/// problem is not tied to a line).
class ConfigError : public Error {
 public:
  ConfigError(int line, const std::string& what)
      : Error(line > 0 ? "line " + std::to_string(line) + ": " + what : what),
        line_(line) {}

  int line() const noexcept { return line_; }

 private:
  int line_;
};

}  // namespace cqed
