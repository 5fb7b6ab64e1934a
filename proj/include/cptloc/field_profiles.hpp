#pragma once

#include <memory>
#include <variant>

#include "cptloc/errors.hpp"

namespace cptloc {

// Spatial envelope of a beam, evaluated at dimensionless positions (kx for
// standing waves, x/w0 for transverse beam profiles). The returned value is
// the instantaneous Rabi amplitude, signed for standing waves; intensities go
// as its square.
class FieldProfile {
 public:
  static FieldProfile uniform(double amplitude);
  static FieldProfile standing_wave(double amplitude, double k, double phase = 0.0);
  static FieldProfile gaussian(double amplitude, double w0);
  static FieldProfile lg_donut(double amplitude, double w0);
  // Composite of two 1D profiles on orthogonal axes; intensities add, so the
  // effective amplitude is sqrt(px(x)^2 + py(y)^2).
  static FieldProfile sum_2d(FieldProfile profile_x, FieldProfile profile_y);

  // 1D evaluation. Sum2D rejects 1D positions (DimensionMismatch).
  double evaluate(double x) const;
  // 2D evaluation. StandingWave is intrinsically 1D and rejects 2D positions;
  // Gaussian and LGDonut use r = hypot(x, y).
  double evaluate(double x, double y) const;

 private:
  struct Uniform {
    double amplitude;
  };
  struct StandingWave {
    double amplitude;
    double k;
    double phase;
  };
  struct Gaussian {
    double amplitude;
    double w0;
  };
  struct LgDonut {
    double amplitude;
    double w0;
  };
  struct Sum2D {
    std::shared_ptr<const FieldProfile> px;
    std::shared_ptr<const FieldProfile> py;
  };

  using Variant = std::variant<Uniform, StandingWave, Gaussian, LgDonut, Sum2D>;

  explicit FieldProfile(Variant v) : v_(std::move(v)) {}

  Variant v_;
};

// Temporal modulation of the probe amplitude.
struct ModulationSpec {
  enum class Kind { none, full, perturbative };

  Kind kind = Kind::none;
  double nu = 0.0;  // modulation frequency, units gamma_p
  double a = 0.0;   // perturbative modulation depth, dimensionless

  static ModulationSpec none() { return {}; }
  static ModulationSpec full(double nu);
  // Requires 0 < a <= 0.2; amplitude_warning() flags a > 0.1 where the
  // power-series treatment starts to strain.
  static ModulationSpec perturbative(double a, double nu);

  bool amplitude_warning() const { return kind == Kind::perturbative && a > 0.1; }
};

// Probe Rabi amplitude at time t: base, base*cos(nu t), or base*(1 + a sin(nu t)).
double instantaneous_probe(double base, const ModulationSpec& modulation, double t);

}  // namespace cptloc
