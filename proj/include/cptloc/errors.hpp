#pragma once

#include <stdexcept>
#include <string>

namespace cptloc {

// Fixed-step integrator produced a state whose positivity violation exceeds
// the allowed slack; the step size is too coarse for the configured fields.
class StepTooLarge : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Residual did not fall below tolerance within the allotted time.
class NoConvergence : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Both Rabi frequencies zero where a dark state is requested.
class DegenerateFields : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class UnsupportedOrder : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class SeriesDiverges : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Demodulation window is not an integer number of periods (or is too sparse).
class WindowMismatch : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionMismatch : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Width measurement could not bracket a half-level crossing in range.
class NoHalfCrossing : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DegenerateCurve : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class UnknownTag : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Invalid run configuration (CLI flags, config file, or parameter ranges).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace cptloc
