#include "cptloc/field_profiles.hpp"

#include <cmath>
#include <stdexcept>

namespace cptloc {

namespace {

void require(bool ok, const char* msg) {
  if (!ok) throw std::invalid_argument(msg);
}

}  // namespace

FieldProfile FieldProfile::uniform(double amplitude) {
  require(amplitude >= 0.0 && std::isfinite(amplitude), "uniform: amplitude must be >= 0");
  return FieldProfile(Uniform{amplitude});
}

FieldProfile FieldProfile::standing_wave(double amplitude, double k, double phase) {
  require(amplitude >= 0.0 && std::isfinite(amplitude),
          "standing_wave: amplitude must be >= 0");
  require(k > 0.0 && std::isfinite(k), "standing_wave: wavenumber must be > 0");
  require(std::isfinite(phase), "standing_wave: phase must be finite");
  return FieldProfile(StandingWave{amplitude, k, phase});
}

FieldProfile FieldProfile::gaussian(double amplitude, double w0) {
  require(amplitude >= 0.0 && std::isfinite(amplitude), "gaussian: amplitude must be >= 0");
  require(w0 > 0.0 && std::isfinite(w0), "gaussian: waist must be > 0");
  return FieldProfile(Gaussian{amplitude, w0});
}

FieldProfile FieldProfile::lg_donut(double amplitude, double w0) {
  require(amplitude >= 0.0 && std::isfinite(amplitude), "lg_donut: amplitude must be >= 0");
  require(w0 > 0.0 && std::isfinite(w0), "lg_donut: waist must be > 0");
  return FieldProfile(LgDonut{amplitude, w0});
}

FieldProfile FieldProfile::sum_2d(FieldProfile profile_x, FieldProfile profile_y) {
  return FieldProfile(Sum2D{std::make_shared<FieldProfile>(std::move(profile_x)),
                            std::make_shared<FieldProfile>(std::move(profile_y))});
}

double FieldProfile::evaluate(double x) const {
  return std::visit(
      [&](const auto& p) -> double {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, Uniform>) {
          return p.amplitude;
        } else if constexpr (std::is_same_v<T, StandingWave>) {
          return p.amplitude * std::sin(p.k * x + p.phase);
        } else if constexpr (std::is_same_v<T, Gaussian>) {
          const double u = x / p.w0;
          return p.amplitude * std::exp(-0.5 * u * u);
        } else if constexpr (std::is_same_v<T, LgDonut>) {
          const double u = x / p.w0;
          return p.amplitude * std::abs(u) * std::exp(-0.5 * u * u);
        } else {
          throw DimensionMismatch("Sum2D profile requires a 2D position");
        }
      },
      v_);
}

double FieldProfile::evaluate(double x, double y) const {
  return std::visit(
      [&](const auto& p) -> double {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, Uniform>) {
          return p.amplitude;
        } else if constexpr (std::is_same_v<T, StandingWave>) {
          throw DimensionMismatch("StandingWave profile is one-dimensional");
        } else if constexpr (std::is_same_v<T, Gaussian>) {
          const double u = std::hypot(x, y) / p.w0;
          return p.amplitude * std::exp(-0.5 * u * u);
        } else if constexpr (std::is_same_v<T, LgDonut>) {
          const double u = std::hypot(x, y) / p.w0;
          return p.amplitude * u * std::exp(-0.5 * u * u);
        } else {
          const double vx = p.px->evaluate(x);
          const double vy = p.py->evaluate(y);
          return std::hypot(vx, vy);  // intensities add
        }
      },
      v_);
}

ModulationSpec ModulationSpec::full(double nu) {
  if (!(nu > 0.0) || !std::isfinite(nu)) {
    throw std::invalid_argument("ModulationSpec::full: nu must be > 0");
  }
  ModulationSpec spec;
  spec.kind = Kind::full;
  spec.nu = nu;
  return spec;
}

ModulationSpec ModulationSpec::perturbative(double a, double nu) {
  if (!(nu > 0.0) || !std::isfinite(nu)) {
    throw std::invalid_argument("ModulationSpec::perturbative: nu must be > 0");
  }
  if (!(a > 0.0) || a > 0.2) {
    throw std::invalid_argument(
        "ModulationSpec::perturbative: depth a must lie in (0, 0.2]");
  }
  ModulationSpec spec;
  spec.kind = Kind::perturbative;
  spec.nu = nu;
  spec.a = a;
  return spec;
}

double instantaneous_probe(double base, const ModulationSpec& modulation, double t) {
  switch (modulation.kind) {
    case ModulationSpec::Kind::none:
      return base;
    case ModulationSpec::Kind::full:
      return base * std::cos(modulation.nu * t);
    case ModulationSpec::Kind::perturbative:
      return base * (1.0 + modulation.a * std::sin(modulation.nu * t));
  }
  return base;
}

}  // namespace cptloc
