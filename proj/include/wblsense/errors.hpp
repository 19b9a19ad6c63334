// errors.hpp
// Error types shared across the library. Argument validation failures use
// std::invalid_argument directly; the types below cover the remaining
// failure classes that callers may want to handle separately.

#pragma once

#include <stdexcept>
#include <string>

namespace wblsense {

// Request exceeds a configured size cap (partition enumeration, exact
// state-vector evolution).
class CapacityError : public std::runtime_error {
 public:
  explicit CapacityError(const std::string& what) : std::runtime_error(what) {}
};

// An intermediate quantity drifted outside its numerical validity band,
// e.g. an eigenvalue of a nominally PSD matrix below the clamp tolerance.
class NumericalError : public std::runtime_error {
 public:
  explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

// The exact quantum evolution contradicted a structural assumption it is
// meant to certify (basis-state closure, two-branch decomposition).
class OracleViolation : public std::runtime_error {
 public:
  explicit OracleViolation(const std::string& what) : std::runtime_error(what) {}
};

// A statistical analysis was requested on degenerate input (e.g. a fit
// window with too few points).
class AnalysisError : public std::runtime_error {
 public:
  explicit AnalysisError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace wblsense
