#pragma once

#include "cptloc/errors.hpp"
#include "cptloc/series.hpp"

namespace cptloc {

// Instantaneous rho22 under full probe modulation, as a function of the
// modulation phase theta = nu*t and the local field ratio s = Omega_s/Omega_p:
//   cos^2(theta) / (cos^2(theta) + s^2).
// The removable 0/0 point at s = 0, cos(theta) = 0 returns 1.
double rho22_full_modulation(double s, double theta);

// Closed-form Fourier coefficients of rho22(t) = f0 + sum_{l>=1} f_2l cos(2 l nu t)
// for l in {0, 1, 2}. Evaluated in the cancellation-free equivalent form
//   f0 = d/u,  f_2l = (-1)^{l+1} (2s/u) d^{2l},  u = sqrt(1+s^2), d = 1/(u+s),
// which is algebraically identical to the direct expressions
//   f0 = 1 - s/u, f2 = (2+4s^2)s/u - 4s^2, f4 = -2s(1+8s^2(1+s^2))/u + 8s^2(1+2s^2)
// but stays accurate for large s where those cancel catastrophically. The
// s -> 0 limits (1, 0, 0) fall out automatically.
// Throws UnsupportedOrder for l outside {0, 1, 2}; use quadrature instead.
double f_coeff_closed(int l, double s);

// Independent quadrature oracle for the same coefficients, any l >= 0.
// Midpoint rule over one period of cos^2/(cos^2+s^2) with compensated
// summation; node count picked from the integrand's analyticity strip so the
// absolute error stays below ~1e-12 for s >= 2e-4 (pass n_nodes to override).
double f_coeff_quadrature(int l, double s, int n_nodes = 0);

// Partial sum of the printed general series for f_2l, plus convergence data.
struct SeriesSum {
  double value = 0.0;
  double last_term_magnitude = 0.0;
  int terms_used = 0;
};

// Sums, as printed,
//   f_2l = sum_{m>=l} (-1)^{m-1} s^{-2m} C(2m,m) (2/4^m) C(2m, m-l)
// up to m_max. The expansion parameter must satisfy s > 1 (enforced); terms
// growing for three consecutive m raise SeriesDiverges. The result is meant
// to be compared against f_coeff_quadrature — the comparison, not agreement,
// is the deliverable (the printed form disagrees with the quadrature oracle
// by roughly the C(2m,m) weight it carries).
SeriesSum f_coeff_series(int l, double s, int m_max);

// Coefficients of the quasi-static power-series expansion of rho22 in the
// perturbative modulation depth a (signal = sum_k coeff_k * (a sin nu t)^k):
//   order 0: 1/(1+s^2)
//   order 1: 2 s^2/(1+s^2)^2
//   order 2: -s^2 (3-s^2)/(1+s^2)^3
// Throws UnsupportedOrder for order outside {0, 1, 2}.
double perturbative_coeff(int order, double s);

// Trapezoidal Fourier projection of a uniformly sampled series onto
// cos(harmonic * nu * t); harmonic 0 returns the mean. The window must span
// an integer number of the requested harmonic's periods (within 0.1%) with at
// least 64 samples per period, else WindowMismatch.
double demodulate(const SampledSeries& series, double nu, int harmonic);

}  // namespace cptloc
