#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "beam/dynamics.hpp"
#include "beam/energy.hpp"
#include "beam/stationary.hpp"

namespace beam {

struct MonotoneCheck {
  std::size_t violations{0};
  /// Largest single-step increase of the total energy (0 if it never rises).
  double worst{0.0};
};

/// Counts steps with E(t_{k+1}) − E(t_k) > per_step_tol.
MonotoneCheck check_energy_monotone(std::span<const EnergyLedger> ledger, double per_step_tol);
/// Same, with the tolerance 10·newton_tol of the run.
MonotoneCheck check_energy_monotone(const Trajectory& trajectory);

/// max_k |E(t_k) − E(0) + dissipated(t_k)|
double check_energy_identity(std::span<const EnergyLedger> ledger);
double check_energy_identity(const Trajectory& trajectory);

struct BoundsReport {
  /// sup_k (u, u)_{H²*}
  double sup_h2star{0.0};
  double sup_dissipated{0.0};
  /// sup of (u, u)_{H²*} over the second half of the run
  double sup_h2star_late{0.0};
  bool finite{true};
};

BoundsReport check_bounds(std::span<const EnergyLedger> ledger);
BoundsReport check_bounds(const Trajectory& trajectory);

struct WindowSample {
  double t_start{0.0};
  double value{0.0};
};

/// ∫_t^{t+window} (F1(v), v) ds for every ledger time t with t + window
/// inside the run, from the cumulative dissipation the integrator recorded.
/// Throws std::invalid_argument if window <= 0 or exceeds the run length.
std::vector<WindowSample> windowed_dissipation(std::span<const EnergyLedger> ledger, double window);
std::vector<WindowSample> windowed_dissipation(const Trajectory& trajectory, double window);

struct ConvergenceReport {
  std::vector<double> times;
  std::vector<double> h2star_gap;  // ‖u(t) − û‖_{H²*}
  std::vector<double> v_l2;        // ‖u'(t)‖_{L²}
  std::vector<double> sigma_T_series;
  double sigma_T_hat{0.0};
  /// Σ_T(u(t_end)) − Σ_T(û)
  double sigma_T_gap_final{0.0};
  /// First sample time after which both gaps stay below tolerance.
  std::optional<double> settled_at;
  std::size_t monotonicity_violations{0};
  double worst_violation{0.0};
  /// Samples with Σ_T(u) below the minimum value (beyond roundoff slack).
  std::size_t floor_violations{0};
};

ConvergenceReport convergence_report(const Trajectory& trajectory, const StationarySolution& stationary,
                                     const BeamProblem& problem, double gap_tol, double v_tol);

}  // namespace beam
