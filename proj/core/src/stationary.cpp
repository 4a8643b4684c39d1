#include "beam/stationary.hpp"

#include <cmath>
#include <sstream>

#include "linear_solve.hpp"

namespace beam {

double sigma_T(std::span<const double> u, const BeamProblem& problem) {
  const auto& disc = problem.disc();
  const auto& sc = problem.scenario();
  return 0.5 * sc.rigidity * h2star_norm_sq(u, disc) + potential_V(u, sc.restoring, disc.quadrature()) -
         l2_inner(problem.forcing(), u, disc.quadrature());
}

std::vector<double> stationary_gradient(std::span<const double> u, const BeamProblem& problem) {
  const std::size_t n = problem.size();
  if (u.size() != n) throw std::invalid_argument("stationary_gradient: dimension mismatch");
  std::vector<double> g(n);
  problem.disc().op().apply_extended(u, g);
  const auto& sc = problem.scenario();
  const auto f = problem.forcing();
  for (std::size_t i = 0; i < n; ++i) g[i] = sc.rigidity * g[i] + restoring_force(sc.restoring, u[i]) - f[i];
  return g;
}

double residual_bvp(std::span<const double> u, const BeamProblem& problem) {
  return detail::max_abs(stationary_gradient(u, problem));
}

StationarySolution solve_stationary(const BeamProblem& problem, std::optional<std::vector<double>> initial_guess,
                                    const StationaryOptions& opts) {
  const auto& sc = problem.scenario();
  const auto& op = problem.disc().op();
  const auto& w = problem.disc().quadrature().weights;
  const std::size_t n = problem.size();

  std::vector<double> u;
  if (initial_guess) {
    if (initial_guess->size() != n) throw std::invalid_argument("solve_stationary: initial guess has wrong size");
    u = std::move(*initial_guess);
  } else {
    // Linearized warm start: σ A u = f.
    u.assign(n, 0.0);
    const std::vector<double> zero(n, 0.0);
    if (detail::solve_shifted_operator(op, zero, sc.rigidity, problem.forcing(), u) != detail::SolveStatus::Ok)
      throw StationaryError(StationaryErrorKind::NonConvexDetected, "warm start: operator not positive definite");
  }

  std::vector<double> hess_diag(n), step(n), trial(n);
  StationarySolution sol;
  bool converged = false;
  for (int it = 1; it <= opts.max_iter; ++it) {
    const std::vector<double> g = stationary_gradient(u, problem);
    for (std::size_t i = 0; i < n; ++i) {
      hess_diag[i] = restoring_stiffness(sc.restoring, u[i]);
      if (!(hess_diag[i] >= 0.0)) {
        std::ostringstream os;
        os << "negative curvature of the restoring potential at u = " << u[i];
        throw StationaryError(StationaryErrorKind::NonConvexDetected, os.str());
      }
    }
    if (detail::solve_shifted_operator(op, hess_diag, sc.rigidity, g, step) != detail::SolveStatus::Ok)
      throw StationaryError(StationaryErrorKind::NonConvexDetected, "Hessian is not positive definite");

    const double norm = detail::max_abs(step);
    sol.newton_iters = it;
    sol.grad_norm = norm;
    if (!std::isfinite(norm)) break;
    if (norm <= opts.tol) {
      for (std::size_t i = 0; i < n; ++i) u[i] -= step[i];
      converged = true;
      break;
    }

    // Armijo backtracking along −step; slack covers roundoff in Σ_T.
    const double phi0 = sigma_T(u, problem);
    double slope = 0.0;
    for (std::size_t i = 0; i < n; ++i) slope -= w[i] * g[i] * step[i];
    const double slack = 1e-13 * (1.0 + std::abs(phi0));
    double alpha = 1.0;
    for (int k = 0; k < 40; ++k) {
      for (std::size_t i = 0; i < n; ++i) trial[i] = u[i] - alpha * step[i];
      if (sigma_T(trial, problem) <= phi0 + 1e-4 * alpha * slope + slack) break;
      alpha *= 0.5;
    }
    u.swap(trial);
  }
  if (!converged) {
    std::ostringstream os;
    os << "stationary Newton did not converge in " << opts.max_iter << " iterations (last step "
       << sol.grad_norm << ")";
    throw StationaryError(StationaryErrorKind::MaxIterExceeded, os.str());
  }
  sol.sigma_T_value = sigma_T(u, problem);
  sol.strong_residual = residual_bvp(u, problem);
  sol.u_hat = std::move(u);
  return sol;
}

}  // namespace beam
