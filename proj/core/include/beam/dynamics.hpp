#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "beam/energy.hpp"
#include "beam/problem.hpp"

namespace beam {

struct NewtonOptions {
  /// Bound on the max-norm of the Newton correction J⁻¹R (velocity units).
  double tol{1e-10};
  int max_iter{50};
  /// Relative switch for the discrete gradient's midpoint fallback.
  double dg_threshold{1e-12};
};

struct StepReport {
  int newton_iters{0};
  double residual_norm{0.0};
  double energy_before{0.0};
  double energy_after{0.0};
  double dissipation_increment{0.0};
};

enum class StepErrorKind { NewtonDivergence, SingularJacobian };

class StepError : public std::runtime_error {
 public:
  StepError(StepErrorKind kind, double time, const std::string& what);
  StepErrorKind kind() const { return kind_; }
  /// Model time at the start of the failing step.
  double time() const { return time_; }

 private:
  StepErrorKind kind_;
  double time_;
};

struct StepResult {
  State state;
  StepReport report;
};

/// One step of the energy-consistent implicit midpoint scheme
///
///   u⁺ = u + dt·v_mid
///   m(v⁺ − v)/dt + F1(v_mid) + σ A u_mid + G(u, u⁺) = f
///
/// with v_mid, u_mid the averages of the two time levels and G the nodewise
/// discrete gradient of the restoring potential. Newton's method on v⁺.
/// Pairing the momentum equation with u⁺ − u = dt·v_mid gives
///   E(u⁺, v⁺) − E(u, v) = −dt·(F1(v_mid), v_mid)_h + dt·(R, v_mid)_h
/// where R is the final momentum residual.
///
/// Throws StepError.
StepResult step(const State& state, const BeamProblem& problem, double dt, const NewtonOptions& opts = {});

/// Momentum residual R(v⁺) of the step from `before` to `after` (nodal).
std::vector<double> step_residual(const State& before, const State& after, const BeamProblem& problem,
                                  double dg_threshold = 1e-12);

/// |⟨m(v⁺−v)/dt, w⟩ + (F1(v_mid), w) + σ(u_mid, w)_{H²*} + (G, w) − (f, w)|
/// for the step before → after, i.e. the weak form tested against w with the
/// acceleration reconstructed from the step.
double weak_residual(const State& before, const State& after, const BeamProblem& problem,
                     std::span<const double> test_vector, double dg_threshold = 1e-12);

struct RunOptions {
  NewtonOptions newton;
  /// Keep every k-th state (the final state is always kept).
  std::size_t snapshot_stride{1};
  /// Retry a diverged step once as two half steps.
  bool halve_on_divergence{true};
};

struct Trajectory {
  /// One ledger per accepted step, starting with t = 0.
  std::vector<EnergyLedger> energy;
  std::vector<State> snapshots;
  std::size_t snapshot_stride{1};
  double newton_tol{1e-10};
  long total_newton_iters{0};
  int max_newton_iters{0};
  double max_residual{0.0};
  int dt_halvings{0};
};

/// Integrates from t = 0 to t_end. The step count is ceil(t_end/dt); the last
/// step is shortened to land on t_end. Step errors are rethrown with the
/// failing time attached.
Trajectory run(const BeamProblem& problem, const RunOptions& opts = {});

}  // namespace beam
