#include "cptloc/cpt_analytic.hpp"

#include <cmath>

namespace cptloc {

namespace {

void require_ratio(double ratio, const char* who) {
  if (!(ratio >= 0.0) || !std::isfinite(ratio)) {
    throw std::invalid_argument(std::string(who) + ": intensity ratio must be finite and >= 0");
  }
}

}  // namespace

DarkState dark_state(double omega_p, double omega_s) {
  if (omega_p == 0.0 && omega_s == 0.0) {
    throw DegenerateFields("dark_state: both Rabi frequencies are zero");
  }
  const double omega = std::hypot(omega_p, omega_s);
  return {omega_p / omega, -omega_s / omega};
}

double rho22_unmodulated(double ratio, double kx) {
  require_ratio(ratio, "rho22_unmodulated");
  const double s = std::sin(kx);
  return 1.0 / (1.0 + ratio * s * s);
}

double fwhm_analytic(double ratio) {
  if (!(ratio > 0.0) || !std::isfinite(ratio)) {
    throw std::invalid_argument("fwhm_analytic: ratio must be finite and > 0");
  }
  return 2.0 / std::sqrt(ratio);
}

double rho22_coupled_lambda(double ratio, double kx) {
  const double v = rho22_unmodulated(ratio, kx);
  return v * v;
}

double rho33_2d(double ratio_x, double ratio_y, double kx, double ky) {
  require_ratio(ratio_x, "rho33_2d");
  require_ratio(ratio_y, "rho33_2d");
  const double sx = std::sin(kx);
  const double sy = std::sin(ky);
  return 1.0 / (1.0 + ratio_x * sx * sx + ratio_y * sy * sy);
}

}  // namespace cptloc
