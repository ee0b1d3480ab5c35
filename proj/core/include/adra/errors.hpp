#pragma once

#include <stdexcept>
#include <string>

namespace adra {

// Base of every error raised by the simulator.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A parameter set violates one of its invariants.
class InvalidParams : public Error {
 public:
  using Error::Error;
};

// Row, column, word or bit index outside the array geometry.
class OutOfRange : public Error {
 public:
  using Error::Error;
};

// Adjacent sense levels are too close for the requested margin.
class InsufficientMargin : public Error {
 public:
  using Error::Error;
};

// (or, and, b) triple that no pair of stored bits can produce.
class UnreachableTriple : public Error {
 public:
  using Error::Error;
};

// Calibration targets cannot be met by the energy/latency model structure.
class InfeasibleTargets : public Error {
 public:
  using Error::Error;
};

// Configuration file problem; line() is 0 when the error is not tied to a line.
class ConfigError : public Error {
 public:
  ConfigError(const std::string& what, int line = 0)
      : Error(line > 0 ? "line " + std::to_string(line) + ": " + what : what),
        line_(line) {}

  int line() const noexcept { return line_; }

 private:
  int line_;
};

}  // namespace adra
