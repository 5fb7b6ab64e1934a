#include "cptloc/lambda_system.hpp"

#include <cmath>
#include <sstream>

namespace cptloc {

namespace {

bool finite(double v) { return std::isfinite(v); }

}  // namespace

void LambdaConfig::validate() const {
  std::ostringstream msg;
  if (!finite(omega_p) || !finite(omega_s) || !finite(delta) || !finite(gamma_s) ||
      !finite(gamma_p)) {
    throw ConfigError("LambdaConfig: parameters must be finite");
  }
  if (omega_p < 0.0 || omega_s < 0.0) {
    msg << "LambdaConfig: Rabi frequencies must be non-negative (omega_p=" << omega_p
        << ", omega_s=" << omega_s << ")";
    throw ConfigError(msg.str());
  }
  if (gamma_s <= 0.0) {
    throw ConfigError("LambdaConfig: gamma_s must be positive");
  }
  if (gamma_p != 1.0) {
    // Rates are measured in units of gamma_p; anything else breaks the scale.
    throw ConfigError("LambdaConfig: gamma_p is the unit of rate and must equal 1");
  }
}

DensityMatrix DensityMatrix::pure(int level) {
  if (level < 0 || level > 2) {
    throw ConfigError("DensityMatrix::pure: level index out of range");
  }
  DensityMatrix rho;
  rho.m(level, level) = 1.0;
  return rho;
}

DensityMatrix DensityMatrix::maximally_mixed() {
  DensityMatrix rho;
  rho.m = Matrix3c::Identity() / 3.0;
  return rho;
}

double DensityMatrix::hermiticity_error() const {
  return (m - m.adjoint().eval()).cwiseAbs().maxCoeff();
}

double DensityMatrix::trace_error() const { return std::abs(m.trace() - complexd(1.0)); }

double DensityMatrix::min_eigenvalue() const {
  Eigen::SelfAdjointEigenSolver<Matrix3c> solver(m, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

double DensityMatrix::max_eigenvalue() const {
  Eigen::SelfAdjointEigenSolver<Matrix3c> solver(m, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().maxCoeff();
}

void DensityMatrix::rehermitize() {
  m = 0.5 * (m + m.adjoint().eval());
  const double tr = m.trace().real();
  if (tr > 0.0 && std::isfinite(tr)) {
    m /= tr;
  }
}

}  // namespace cptloc
