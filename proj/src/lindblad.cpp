#include "cptloc/lindblad.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace cptloc {

namespace {

constexpr double kPositivitySlack = 1e-6;

Matrix3c hamiltonian_for_probe(const LambdaConfig& config, double omega_p_instant) {
  Matrix3c h = Matrix3c::Zero();
  h(0, 0) = config.delta;
  h(0, 1) = -config.omega_s;
  h(1, 0) = -config.omega_s;
  h(0, 2) = -omega_p_instant;
  h(2, 0) = -omega_p_instant;
  return h;
}

Matrix3c rhs_for(const Matrix3c& h, const Matrix3c& rho, double gamma_s, double gamma_p) {
  const complexd i_unit(0.0, 1.0);
  Matrix3c d = i_unit * (h * rho - rho * h);
  // Dissipator: -(gamma_1i/2)(|1><1| rho + rho |1><1|) + gamma_1i rho_11 |i><i|.
  const double half = 0.5 * (gamma_s + gamma_p);
  d.row(0) -= half * rho.row(0);
  d.col(0) -= half * rho.col(0);
  const double r11 = rho(0, 0).real();
  d(1, 1) += gamma_s * r11;
  d(2, 2) += gamma_p * r11;
  return d;
}

// One RK4 step of the autonomous equation.
void rk4_step(Matrix3c& rho, const Matrix3c& h, const LambdaConfig& c, double dt) {
  const Matrix3c k1 = rhs_for(h, rho, c.gamma_s, c.gamma_p);
  const Matrix3c k2 = rhs_for(h, (rho + 0.5 * dt * k1).eval(), c.gamma_s, c.gamma_p);
  const Matrix3c k3 = rhs_for(h, (rho + 0.5 * dt * k2).eval(), c.gamma_s, c.gamma_p);
  const Matrix3c k4 = rhs_for(h, (rho + dt * k3).eval(), c.gamma_s, c.gamma_p);
  rho += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  rho = 0.5 * (rho + rho.adjoint().eval());
  const double tr = rho.trace().real();
  if (tr > 0.0 && std::isfinite(tr)) rho /= tr;
}

double stability_scale(const LambdaConfig& c, double omega_p_max) {
  return std::max({1.0, std::hypot(omega_p_max, c.omega_s), std::abs(c.delta),
                   0.5 * c.gamma_total()});
}

void check_positivity(const DensityMatrix& rho, double t) {
  const double min_eig = rho.min_eigenvalue();
  if (!(min_eig >= -kPositivitySlack)) {
    std::ostringstream msg;
    msg << "state positivity violated at t=" << t << " (min eigenvalue " << min_eig
        << "); reduce dt";
    throw StepTooLarge(msg.str());
  }
}

}  // namespace

Matrix3c build_hamiltonian(const LambdaConfig& config) {
  config.validate();
  return hamiltonian_for_probe(config, config.omega_p);
}

Matrix3c lindblad_rhs(const Matrix3c& rho, const LambdaConfig& config) {
  config.validate();
  return rhs_for(hamiltonian_for_probe(config, config.omega_p), rho, config.gamma_s,
                 config.gamma_p);
}

Trajectory evolve(const DensityMatrix& rho0, const LambdaConfig& config, double t_end,
                  double dt) {
  config.validate();
  if (!(t_end > 0.0) || !(dt > 0.0) || dt > t_end) {
    throw ConfigError("evolve: requires 0 < dt <= t_end");
  }
  const Matrix3c h = hamiltonian_for_probe(config, config.omega_p);
  const auto n_steps = static_cast<long>(std::ceil(t_end / dt - 1e-12));

  Trajectory traj;
  traj.times.reserve(n_steps + 1);
  traj.states.reserve(n_steps + 1);
  traj.populations.reserve(n_steps + 1);

  DensityMatrix rho = rho0;
  rho.rehermitize();
  auto store = [&](double t) {
    check_positivity(rho, t);
    traj.times.push_back(t);
    traj.states.push_back(rho);
    traj.populations.push_back(rho.populations());
  };
  store(0.0);
  for (long i = 1; i <= n_steps; ++i) {
    rk4_step(rho.m, h, config, dt);
    store(i * dt);
  }
  return traj;
}

DensityMatrix steady_state(const DensityMatrix& rho0, const LambdaConfig& config,
                           double tol, double max_time) {
  config.validate();
  if (!(tol > 0.0)) throw ConfigError("steady_state: tol must be positive");

  // Order-of-magnitude optical-pumping rate; only steers dt-chunking and the
  // adaptive time budget, never the answer.
  const double omega_sq =
      config.omega_p * config.omega_p + config.omega_s * config.omega_s;
  const double g = config.gamma_total();
  const double rate_guess =
      omega_sq > 0.0 ? omega_sq * g / (g * g + 4.0 * config.delta * config.delta + 2.0 * omega_sq)
                     : g;
  if (max_time <= 0.0) {
    max_time = std::min(1e6, std::max(2e3, 60.0 * std::log(10.0) / rate_guess));
  }

  const Matrix3c h = hamiltonian_for_probe(config, config.omega_p);
  const double dt = 0.05 / stability_scale(config, config.omega_p);

  DensityMatrix rho = rho0;
  rho.rehermitize();

  auto residual = [&]() {
    return rhs_for(h, rho.m, config.gamma_s, config.gamma_p).cwiseAbs().maxCoeff();
  };

  if (residual() < tol) {
    check_positivity(rho, 0.0);
    return rho;
  }

  const auto chunk_steps = static_cast<long>(std::ceil(1.0 / dt));
  double t = 0.0;
  while (t < max_time) {
    for (long i = 0; i < chunk_steps; ++i) rk4_step(rho.m, h, config, dt);
    t += chunk_steps * dt;
    const double res = residual();
    if (!std::isfinite(res)) {
      throw NoConvergence("steady_state: integration diverged (non-finite residual)");
    }
    if (res < tol) {
      check_positivity(rho, t);
      return rho;
    }
  }
  std::ostringstream msg;
  msg << "steady_state: residual still above tol=" << tol << " after t=" << max_time
      << " (degenerate drive configuration?)";
  throw NoConvergence(msg.str());
}

ModulatedTrace evolve_modulated(const DensityMatrix& rho0, const LambdaConfig& config,
                                const ModulationSpec& modulation, int n_periods,
                                int samples_per_period, double transient_pump_times) {
  config.validate();
  if (n_periods < 1 || samples_per_period < 1) {
    throw ConfigError("evolve_modulated: need n_periods >= 1 and samples_per_period >= 1");
  }

  ModulatedTrace trace;

  if (modulation.kind == ModulationSpec::Kind::none) {
    const DensityMatrix ss = steady_state(rho0, config);
    const double r22 = ss.rho22();
    const long n = static_cast<long>(n_periods) * samples_per_period + 1;
    for (long i = 0; i < n; ++i) {
      trace.rho22.times.push_back(static_cast<double>(i));  // nominal unit spacing
      trace.rho22.values.push_back(r22);
    }
    return trace;
  }

  if (!(modulation.nu > 0.0)) throw ConfigError("evolve_modulated: nu must be positive");
  const double pump = config.pumping_rate();
  if (!(pump > 0.0)) {
    throw ConfigError("evolve_modulated: both fields are zero, nothing to modulate");
  }
  trace.adiabaticity_warning = modulation.nu > 0.1 * pump;

  const double period = 2.0 * M_PI / modulation.nu;
  const double sample_dt = period / samples_per_period;
  const double probe_max =
      modulation.kind == ModulationSpec::Kind::perturbative
          ? config.omega_p * (1.0 + modulation.a)
          : config.omega_p;
  const double dt_max = std::min(1.0 / (50.0 * modulation.nu),
                                 0.01 / stability_scale(config, probe_max));
  const auto substeps = static_cast<long>(std::ceil(sample_dt / dt_max));
  const double dt = sample_dt / substeps;

  DensityMatrix rho = rho0;
  rho.rehermitize();

  auto step_at = [&](double t) {
    // Nonautonomous RK4: the Hamiltonian is rebuilt with the instantaneous
    // probe amplitude at each stage time.
    const Matrix3c h1 = hamiltonian_for_probe(
        config, instantaneous_probe(config.omega_p, modulation, t));
    const Matrix3c h2 = hamiltonian_for_probe(
        config, instantaneous_probe(config.omega_p, modulation, t + 0.5 * dt));
    const Matrix3c h3 = hamiltonian_for_probe(
        config, instantaneous_probe(config.omega_p, modulation, t + dt));
    const Matrix3c k1 = rhs_for(h1, rho.m, config.gamma_s, config.gamma_p);
    const Matrix3c k2 =
        rhs_for(h2, (rho.m + 0.5 * dt * k1).eval(), config.gamma_s, config.gamma_p);
    const Matrix3c k3 =
        rhs_for(h2, (rho.m + 0.5 * dt * k2).eval(), config.gamma_s, config.gamma_p);
    const Matrix3c k4 =
        rhs_for(h3, (rho.m + dt * k3).eval(), config.gamma_s, config.gamma_p);
    rho.m += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    rho.rehermitize();
  };

  const double transient = transient_pump_times / pump;
  const auto transient_steps = static_cast<long>(std::ceil(transient / dt));
  double t = 0.0;
  for (long i = 0; i < transient_steps; ++i) {
    step_at(t);
    t = (i + 1) * dt;
  }

  const double t_start = t;
  const long n_samples = static_cast<long>(n_periods) * samples_per_period;
  for (long s = 0; s <= n_samples; ++s) {
    check_positivity(rho, t);
    trace.rho22.times.push_back(t);
    trace.rho22.values.push_back(rho.rho22());
    if (s == n_samples) break;
    for (long i = 0; i < substeps; ++i) {
      step_at(t);
      t = t_start + (s * substeps + i + 1) * dt;
    }
  }
  return trace;
}

}  // namespace cptloc
