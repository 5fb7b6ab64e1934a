#pragma once

#include <Eigen/Dense>
#include <array>
#include <complex>

#include "cptloc/errors.hpp"

namespace cptloc {

using complexd = std::complex<double>;
using Matrix3c = Eigen::Matrix3cd;

// Physical parameters of the driven three-level Lambda atom.
//
// Basis order is (|1>, |2>, |3>): |1> is the excited state, the drive couples
// |1>-|2> and the probe couples |1>-|3>. Both fields share the common
// one-photon detuning delta, so two-photon resonance holds by construction.
// All rates and Rabi frequencies are expressed in units of the probe-branch
// decay gamma_p, which pins gamma_p = 1.
struct LambdaConfig {
  double omega_p = 0.0;  // probe Rabi frequency (|1>-|3>)
  double omega_s = 0.0;  // drive Rabi frequency (|1>-|2>)
  double delta = 0.0;    // common detuning
  double gamma_s = 1.0;  // decay rate |1> -> |2>
  double gamma_p = 1.0;  // decay rate |1> -> |3>; unit convention, must be 1

  // Throws ConfigError on non-finite or out-of-range parameters.
  void validate() const;

  double gamma_total() const { return gamma_s + gamma_p; }

  // Dark-state pumping rate Omega^2/gamma; sets the transient time scale and
  // the response bandwidth against which modulation must be slow.
  double pumping_rate() const {
    return (omega_p * omega_p + omega_s * omega_s) / gamma_total();
  }
};

// 3x3 density matrix in the (|1>, |2>, |3>) basis. Kept Hermitian and
// trace-one by the evolution routines; helpers below report how far a state
// has drifted from those invariants.
struct DensityMatrix {
  Matrix3c m = Matrix3c::Zero();

  static DensityMatrix pure(int level);  // projector |level><level|, 0-based
  static DensityMatrix maximally_mixed();
  static DensityMatrix from_matrix(const Matrix3c& mat) { return {mat}; }

  double rho11() const { return m(0, 0).real(); }
  double rho22() const { return m(1, 1).real(); }
  double rho33() const { return m(2, 2).real(); }
  std::array<double, 3> populations() const { return {rho11(), rho22(), rho33()}; }

  double hermiticity_error() const;
  double trace_error() const;       // |tr(rho) - 1|
  double min_eigenvalue() const;    // most negative eigenvalue (positivity)
  double max_eigenvalue() const;

  // (rho + rho^H)/2 followed by trace renormalization.
  void rehermitize();
};

}  // namespace cptloc
