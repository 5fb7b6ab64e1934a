#pragma once

#include <vector>

#include "cptloc/field_profiles.hpp"
#include "cptloc/lambda_system.hpp"
#include "cptloc/series.hpp"

namespace cptloc {

// Stored fixed-step trajectory of the master equation.
struct Trajectory {
  std::vector<double> times;
  std::vector<DensityMatrix> states;
  std::vector<std::array<double, 3>> populations;

  const DensityMatrix& final_state() const { return states.back(); }
};

// rho22(t) sampled over the tail of a modulated run.
struct ModulatedTrace {
  SampledSeries rho22;
  // Set when nu exceeds a tenth of the dark-state pumping rate Omega^2/gamma;
  // the quasi-static formulas stop being trustworthy there.
  bool adiabaticity_warning = false;
};

// Rotating-frame Hamiltonian (units hbar*gamma_p):
//   H' = delta |1><1| - (omega_p |3><1| + omega_s |2><1| + h.c.)
// The frame transformation absorbs the optical e^{-i delta t} factor, leaving
// +delta on the excited state. Annihilates the dark state for any delta.
Matrix3c build_hamiltonian(const LambdaConfig& config);

// Right-hand side of the master equation:
//   drho/dt = i[H', rho] - sum_{i=2,3} gamma_1i/2 (|1><1| rho - 2 rho_11 |i><i| + rho |1><1|)
// Traceless and Hermitian for Hermitian input.
Matrix3c lindblad_rhs(const Matrix3c& rho, const LambdaConfig& config);
inline Matrix3c lindblad_rhs(const DensityMatrix& rho, const LambdaConfig& config) {
  return lindblad_rhs(rho.m, config);
}

// Fixed-step RK4 integration from t = 0 to >= t_end. Every stored state is
// re-Hermitized and trace-renormalized; throws StepTooLarge if positivity is
// violated past the 1e-6 slack anywhere along the way.
Trajectory evolve(const DensityMatrix& rho0, const LambdaConfig& config, double t_end,
                  double dt);

// Long-time integration until max|drho/dt| < tol. max_time <= 0 selects an
// adaptive default, min(1e6, max(2e3, 60 ln10 / estimated pumping rate)).
// Throws NoConvergence when the budget runs out.
DensityMatrix steady_state(const DensityMatrix& rho0, const LambdaConfig& config,
                           double tol = 1e-10, double max_time = -1.0);

// Integrates with the probe amplitude modulated in time (Hamiltonian rebuilt
// at every RK4 stage) and returns rho22 sampled uniformly over the final
// n_periods modulation periods, after discarding a transient of
// transient_pump_times dark-state pumping times.
ModulatedTrace evolve_modulated(const DensityMatrix& rho0, const LambdaConfig& config,
                                const ModulationSpec& modulation, int n_periods,
                                int samples_per_period,
                                double transient_pump_times = 10.0);

}  // namespace cptloc
