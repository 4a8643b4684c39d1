#include "beam/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "linear_solve.hpp"

namespace beam {

StepError::StepError(StepErrorKind kind, double time, const std::string& what)
    : std::runtime_error(what), kind_(kind), time_(time) {}

namespace {

/// Midpoint quantities of a trial step and the pieces of the momentum
/// residual that do not involve the operator.
struct TrialStep {
  std::vector<double> u_new;
  std::vector<double> v_mid;
  std::vector<double> u_mid;
  std::vector<double> local;  // m(v⁺−v)/dt + F1(v_mid) + G − f
};

void evaluate_trial(const State& s, std::span<const double> v_new, double dt, const BeamProblem& p,
                    double dg_threshold, TrialStep& out) {
  const auto& sc = p.scenario();
  const std::size_t n = p.size();
  const auto f = p.forcing();
  out.u_new.resize(n);
  out.v_mid.resize(n);
  out.u_mid.resize(n);
  out.local.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double vm = 0.5 * (s.v[i] + v_new[i]);
    const double un = s.u[i] + dt * vm;
    out.v_mid[i] = vm;
    out.u_new[i] = un;
    out.u_mid[i] = 0.5 * (s.u[i] + un);
    out.local[i] = sc.mass * (v_new[i] - s.v[i]) / dt + damping_force(sc.damping, vm) +
                   restoring_discrete_gradient(sc.restoring, s.u[i], un, dg_threshold) - f[i];
  }
}

void full_residual(const TrialStep& trial, const BeamProblem& p, std::vector<double>& residual) {
  const std::size_t n = p.size();
  residual.resize(n);
  p.disc().op().apply_extended(trial.u_mid, residual);
  const double sigma = p.scenario().rigidity;
  for (std::size_t i = 0; i < n; ++i) residual[i] = trial.local[i] + sigma * residual[i];
}

bool all_finite(std::span<const double> v) {
  for (double x : v)
    if (!std::isfinite(x)) return false;
  return true;
}

std::string at_time(const char* what, double t) {
  std::ostringstream os;
  os.precision(17);
  os << what << " at t = " << t;
  return os.str();
}

}  // namespace

StepResult step(const State& state, const BeamProblem& problem, double dt, const NewtonOptions& opts) {
  if (!(dt > 0.0)) throw std::invalid_argument("step: dt must be positive");
  const auto& sc = problem.scenario();
  const std::size_t n = problem.size();
  if (state.u.size() != n || state.v.size() != n) throw std::invalid_argument("step: state dimension mismatch");

  StepResult result;
  result.report.energy_before = energy_of(state, problem).total;

  std::vector<double> v_new = state.v;
  std::vector<double> residual(n), jac_diag(n), correction(n);
  TrialStep trial;
  bool converged = false;
  const double jac_scale = 0.25 * dt * sc.rigidity;
  for (int it = 1; it <= opts.max_iter; ++it) {
    evaluate_trial(state, v_new, dt, problem, opts.dg_threshold, trial);
    full_residual(trial, problem, residual);
    if (!all_finite(residual))
      throw StepError(StepErrorKind::NewtonDivergence, state.t, at_time("non-finite residual", state.t));
    for (std::size_t i = 0; i < n; ++i)
      jac_diag[i] = sc.mass / dt + 0.5 * damping_slope(sc.damping, trial.v_mid[i]) +
                    0.25 * dt * restoring_stiffness(sc.restoring, trial.u_mid[i]);
    if (detail::solve_shifted_operator(problem.disc().op(), jac_diag, jac_scale, residual, correction) !=
        detail::SolveStatus::Ok)
      throw StepError(StepErrorKind::SingularJacobian, state.t, at_time("singular Newton jacobian", state.t));
    for (std::size_t i = 0; i < n; ++i) v_new[i] -= correction[i];
    const double norm = detail::max_abs(correction);
    result.report.newton_iters = it;
    result.report.residual_norm = norm;
    if (!all_finite(correction))
      throw StepError(StepErrorKind::NewtonDivergence, state.t, at_time("non-finite Newton update", state.t));
    if (norm <= opts.tol) {
      converged = true;
      break;
    }
  }
  if (!converged) {
    std::ostringstream os;
    os << "Newton did not converge in " << opts.max_iter << " iterations (last correction "
       << result.report.residual_norm << ")";
    throw StepError(StepErrorKind::NewtonDivergence, state.t, at_time(os.str().c_str(), state.t));
  }

  evaluate_trial(state, v_new, dt, problem, opts.dg_threshold, trial);
  double dissipation = 0.0;
  const auto& w = problem.disc().quadrature().weights;
  for (std::size_t i = 0; i < n; ++i)
    dissipation += w[i] * damping_force(sc.damping, trial.v_mid[i]) * trial.v_mid[i];

  result.state = State{state.t + dt, std::move(trial.u_new), std::move(v_new)};
  result.report.dissipation_increment = dt * dissipation;
  result.report.energy_after = energy_of(result.state, problem).total;
  return result;
}

std::vector<double> step_residual(const State& before, const State& after, const BeamProblem& problem,
                                  double dg_threshold) {
  const double dt = after.t - before.t;
  if (!(dt > 0.0)) throw std::invalid_argument("step_residual: states must be ordered in time");
  TrialStep trial;
  evaluate_trial(before, after.v, dt, problem, dg_threshold, trial);
  std::vector<double> residual;
  full_residual(trial, problem, residual);
  return residual;
}

double weak_residual(const State& before, const State& after, const BeamProblem& problem,
                     std::span<const double> test_vector, double dg_threshold) {
  const double dt = after.t - before.t;
  if (!(dt > 0.0)) throw std::invalid_argument("weak_residual: states must be ordered in time");
  const std::size_t n = problem.size();
  if (test_vector.size() != n || after.u.size() != n) throw std::invalid_argument("weak_residual: dimension mismatch");
  // Everything from the supplied end state, so a perturbed `after.u` shows up.
  const auto& sc = problem.scenario();
  const auto f = problem.forcing();
  std::vector<double> local(n), u_mid(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double vm = 0.5 * (before.v[i] + after.v[i]);
    u_mid[i] = 0.5 * (before.u[i] + after.u[i]);
    local[i] = sc.mass * (after.v[i] - before.v[i]) / dt + damping_force(sc.damping, vm) +
               restoring_discrete_gradient(sc.restoring, before.u[i], after.u[i], dg_threshold) - f[i];
  }
  const double pairing = l2_inner(local, test_vector, problem.disc().quadrature()) +
                         sc.rigidity * h2star_inner(u_mid, test_vector, problem.disc());
  return std::abs(pairing);
}

// ---------------------------------------------------------------------------

Trajectory run(const BeamProblem& problem, const RunOptions& opts) {
  const auto& sc = problem.scenario();
  if (!(sc.dt > 0.0)) throw std::invalid_argument("run: dt must be positive");
  Trajectory traj;
  traj.snapshot_stride = std::max<std::size_t>(opts.snapshot_stride, 1);
  traj.newton_tol = opts.newton.tol;

  State state = initial_state(problem);
  double dissipated = 0.0;
  traj.energy.push_back(energy_of(state, problem, dissipated));
  traj.snapshots.push_back(state);

  const std::size_t n_steps =
      sc.t_end > 0.0 ? static_cast<std::size_t>(std::ceil(sc.t_end / sc.dt - 1e-9)) : std::size_t{0};

  const auto accept = [&](StepResult&& r, double t_exact) {
    dissipated += r.report.dissipation_increment;
    r.state.t = t_exact;
    traj.total_newton_iters += r.report.newton_iters;
    traj.max_newton_iters = std::max(traj.max_newton_iters, r.report.newton_iters);
    traj.max_residual = std::max(traj.max_residual, r.report.residual_norm);
    state = std::move(r.state);
    traj.energy.push_back(energy_of(state, problem, dissipated));
  };

  for (std::size_t k = 1; k <= n_steps; ++k) {
    const double t_target = k == n_steps ? sc.t_end : static_cast<double>(k) * sc.dt;
    const double h = t_target - state.t;
    try {
      accept(step(state, problem, h, opts.newton), t_target);
    } catch (const StepError& e) {
      if (e.kind() != StepErrorKind::NewtonDivergence || !opts.halve_on_divergence) throw;
      ++traj.dt_halvings;
      const double t_half = state.t + 0.5 * h;
      accept(step(state, problem, 0.5 * h, opts.newton), t_half);
      accept(step(state, problem, t_target - t_half, opts.newton), t_target);
    }
    if (k % traj.snapshot_stride == 0 || k == n_steps) traj.snapshots.push_back(state);
  }
  return traj;
}

}  // namespace beam
