#pragma once

#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "beam/problem.hpp"

namespace beam {

/// Minimizer of the discrete potential energy
///   Σ_T(u) = σ/2 (u, u)_{H²*} + V(u) − (f, u)
/// which solves σ A u + F2(u) = f.
struct StationarySolution {
  std::vector<double> u_hat;
  double sigma_T_value{0.0};
  /// Max-norm of the last Newton step H⁻¹g (displacement units).
  double grad_norm{0.0};
  /// Max-norm of the strong residual σAu + F2(u) − f at u_hat.
  double strong_residual{0.0};
  int newton_iters{0};
};

struct StationaryOptions {
  double tol{1e-10};
  int max_iter{50};
};

enum class StationaryErrorKind { MaxIterExceeded, NonConvexDetected };

class StationaryError : public std::runtime_error {
 public:
  StationaryError(StationaryErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  StationaryErrorKind kind() const { return kind_; }

 private:
  StationaryErrorKind kind_;
};

double sigma_T(std::span<const double> u, const BeamProblem& problem);

/// Gradient of Σ_T with respect to the nodal values, divided by the
/// quadrature weight: σ A u + F2(u) − f.
std::vector<double> stationary_gradient(std::span<const double> u, const BeamProblem& problem);

/// Max-norm of σ A u + F2(u) − f.
double residual_bvp(std::span<const double> u, const BeamProblem& problem);

/// Damped Newton on the gradient with the SPD Hessian σA + diag(F2'(u)) and
/// Armijo backtracking on Σ_T. Without an initial guess the warm start is
/// the solution of σ A u = f. Throws StationaryError.
StationarySolution solve_stationary(const BeamProblem& problem,
                                    std::optional<std::vector<double>> initial_guess = std::nullopt,
                                    const StationaryOptions& opts = {});

}  // namespace beam
