#include "cptloc/modulation.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace cptloc {

namespace {

void require_s(double s, const char* who) {
  if (std::isnan(s) || s < 0.0) {
    throw std::invalid_argument(std::string(who) + ": field ratio s must be >= 0");
  }
}

}  // namespace

double rho22_full_modulation(double s, double theta) {
  require_s(s, "rho22_full_modulation");
  const double c = std::cos(theta);
  const double c2 = c * c;
  if (s == 0.0) return 1.0;  // includes the removable point cos(theta) = 0
  if (std::isinf(s)) return 0.0;
  return c2 / (c2 + s * s);
}

double f_coeff_closed(int l, double s) {
  require_s(s, "f_coeff_closed");
  if (l < 0 || l > 2) {
    throw UnsupportedOrder("f_coeff_closed: only l in {0,1,2}; use f_coeff_quadrature");
  }
  if (std::isinf(s)) return 0.0;
  const double u = std::hypot(1.0, s);
  const double d = 1.0 / (u + s);  // = u - s, without cancellation
  if (l == 0) return d / u;
  const double r = d * d;
  const double magnitude = (2.0 * s / u) * (l == 1 ? r : r * r);
  return l == 1 ? magnitude : -magnitude;
}

double f_coeff_quadrature(int l, double s, int n_nodes) {
  require_s(s, "f_coeff_quadrature");
  if (l < 0) throw UnsupportedOrder("f_coeff_quadrature: l must be >= 0");
  if (s == 0.0) return l == 0 ? 1.0 : 0.0;
  if (std::isinf(s)) return 0.0;

  int n = n_nodes;
  if (n <= 0) {
    // The integrand's nearest pole sits ~asinh(s) off the real axis, so the
    // midpoint rule error decays like exp(-2 n s) for small s. 24/s nodes
    // push that below 1e-12 down to s ~ 2e-4 (capped there).
    n = static_cast<int>(std::max(4096.0, std::min(131072.0, std::ceil(24.0 / s))));
  }

  const double h = M_PI / n;
  double sum = 0.0, comp = 0.0;  // Kahan
  for (int j = 0; j < n; ++j) {
    const double theta = (j + 0.5) * h;
    const double c = std::cos(theta);
    const double g = c * c / (c * c + s * s);
    const double term = g * std::cos(2.0 * l * theta);
    const double y = term - comp;
    const double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }
  const double projection = sum / n;  // (1/pi) * integral over [0, pi)
  return l == 0 ? projection : 2.0 * projection;
}

SeriesSum f_coeff_series(int l, double s, int m_max) {
  if (l < 1) throw UnsupportedOrder("f_coeff_series: l must be >= 1");
  require_s(s, "f_coeff_series");
  if (!(s > 1.0)) {
    throw SeriesDiverges("f_coeff_series: expansion parameter 1/s^2 requires s > 1");
  }
  if (m_max < l) throw std::invalid_argument("f_coeff_series: m_max must be >= l");

  const double x = 1.0 / (s * s);
  // First term, m = l: (-1)^{l-1} x^l (2/4^l) C(2l, l).
  double binom_2l_l = 1.0;
  for (int i = 1; i <= l; ++i) binom_2l_l *= static_cast<double>(l + i) / i;
  double term = (l % 2 == 1 ? 1.0 : -1.0) * std::pow(x, l) * 2.0 * std::pow(0.25, l) *
                binom_2l_l;

  SeriesSum out;
  out.value = term;
  out.last_term_magnitude = std::abs(term);
  out.terms_used = 1;

  int growth_streak = 0;
  double prev_mag = std::abs(term);
  for (int m = l; m < m_max; ++m) {
    // t_{m+1}/t_m = -x (2m+1)^2 / ((m+1-l)(m+1+l))
    const double tm1 = 2.0 * m + 1.0;
    term *= -x * tm1 * tm1 / (static_cast<double>(m + 1 - l) * (m + 1 + l));
    out.value += term;
    out.last_term_magnitude = std::abs(term);
    out.terms_used += 1;
    if (std::abs(term) > prev_mag) {
      if (++growth_streak >= 3) {
        std::ostringstream msg;
        msg << "f_coeff_series: terms growing at m=" << (m + 1) << " for s=" << s;
        throw SeriesDiverges(msg.str());
      }
    } else {
      growth_streak = 0;
    }
    prev_mag = std::abs(term);
  }
  return out;
}

double perturbative_coeff(int order, double s) {
  require_s(s, "perturbative_coeff");
  if (order < 0 || order > 2) {
    throw UnsupportedOrder("perturbative_coeff: only orders {0,1,2}");
  }
  const double q = s * s;
  if (std::isinf(q)) return 0.0;  // drive-dominated limit for every order
  const double inv = 1.0 / (1.0 + q);
  switch (order) {
    case 0:
      return inv;
    case 1:
      return 2.0 * (q * inv) * inv;
    default:
      // -q(3-q)/(1+q)^3, factored to stay in range for any finite q
      return -(q * inv) * ((3.0 - q) * inv) * inv;
  }
}

double demodulate(const SampledSeries& series, double nu, int harmonic) {
  const auto n = series.values.size();
  if (n < 2 || series.times.size() != n) {
    throw WindowMismatch("demodulate: need a series of at least two samples");
  }
  if (harmonic < 0) throw std::invalid_argument("demodulate: harmonic must be >= 0");
  const double span = series.times.back() - series.times.front();
  if (!(span > 0.0)) throw WindowMismatch("demodulate: series span must be positive");

  if (harmonic > 0) {
    if (!(nu > 0.0)) throw std::invalid_argument("demodulate: nu must be positive");
    const double period = 2.0 * M_PI / (harmonic * nu);
    const double cycles = span / period;
    const double rounded = std::round(cycles);
    if (rounded < 1.0 || std::abs(cycles - rounded) > 1e-3 * rounded) {
      std::ostringstream msg;
      msg << "demodulate: window spans " << cycles << " periods of harmonic " << harmonic
          << ", expected an integer count";
      throw WindowMismatch(msg.str());
    }
    if ((static_cast<double>(n) - 1.0) / rounded < 64.0) {
      throw WindowMismatch("demodulate: fewer than 64 samples per period");
    }
  }

  // Trapezoidal projection over the window (end samples at half weight).
  double sum = 0.0, comp = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double w = (i == 0 || i + 1 == n) ? 0.5 : 1.0;
    const double phase = harmonic * nu * series.times[i];
    const double term = w * series.values[i] * (harmonic == 0 ? 1.0 : std::cos(phase));
    const double y = term - comp;
    const double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }
  const double dt = span / (static_cast<double>(n) - 1.0);
  const double integral = sum * dt;
  return harmonic == 0 ? integral / span : 2.0 * integral / span;
}

}  // namespace cptloc
