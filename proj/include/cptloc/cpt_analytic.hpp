#pragma once

#include <complex>

#include "cptloc/errors.hpp"

namespace cptloc {

// Dark-state amplitudes on (|2>, |3>); the |1> component is identically zero.
struct DarkState {
  std::complex<double> c2;
  std::complex<double> c3;
};

// (omega_p, -omega_s)/Omega with Omega = sqrt(omega_p^2 + omega_s^2).
// Throws DegenerateFields when both frequencies vanish.
DarkState dark_state(double omega_p, double omega_s);

// Steady-state population of |2> for a standing-wave drive:
//   rho22 = 1 / (1 + R sin^2(kx)),
// the Fabry-Perot-like localization profile with the intensity ratio
// R = |Omega_s|^2/|Omega_p|^2 playing the role of the finesse.
double rho22_unmodulated(double ratio, double kx);

// Large-R width approximation k*dx = 2/sqrt(R). The exact half-max root is
// arcsin-based; numeric widths come from the PSF measurement machinery.
double fwhm_analytic(double ratio);

// Coupled double-Lambda profile: square of the unmodulated one.
double rho22_coupled_lambda(double ratio, double kx);

// Effective 2D generalization for two orthogonal standing-wave drives:
//   1 / (1 + Rx sin^2(kx) + Ry sin^2(ky)).
double rho33_2d(double ratio_x, double ratio_y, double kx, double ky);

}  // namespace cptloc
