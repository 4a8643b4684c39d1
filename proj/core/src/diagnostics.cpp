#include "beam/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace beam {

MonotoneCheck check_energy_monotone(std::span<const EnergyLedger> ledger, double per_step_tol) {
  MonotoneCheck out;
  for (std::size_t k = 1; k < ledger.size(); ++k) {
    const double rise = ledger[k].total - ledger[k - 1].total;
    out.worst = std::max(out.worst, rise);
    if (rise > per_step_tol) ++out.violations;
  }
  return out;
}

MonotoneCheck check_energy_monotone(const Trajectory& trajectory) {
  return check_energy_monotone(trajectory.energy, 10.0 * trajectory.newton_tol);
}

double check_energy_identity(std::span<const EnergyLedger> ledger) {
  if (ledger.empty()) return 0.0;
  const double e0 = ledger.front().total;
  double worst = 0.0;
  for (const auto& e : ledger) worst = std::max(worst, std::abs(e.total - e0 + e.dissipated_cumulative));
  return worst;
}

double check_energy_identity(const Trajectory& trajectory) { return check_energy_identity(trajectory.energy); }

BoundsReport check_bounds(std::span<const EnergyLedger> ledger) {
  BoundsReport out;
  if (ledger.empty()) return out;
  const double t_half = 0.5 * (ledger.front().t + ledger.back().t);
  for (const auto& e : ledger) {
    const double h2 = e.h2star_norm_u * e.h2star_norm_u;
    if (!std::isfinite(h2) || !std::isfinite(e.dissipated_cumulative)) out.finite = false;
    out.sup_h2star = std::max(out.sup_h2star, h2);
    out.sup_dissipated = std::max(out.sup_dissipated, e.dissipated_cumulative);
    if (e.t >= t_half) out.sup_h2star_late = std::max(out.sup_h2star_late, h2);
  }
  return out;
}

BoundsReport check_bounds(const Trajectory& trajectory) { return check_bounds(trajectory.energy); }

std::vector<WindowSample> windowed_dissipation(std::span<const EnergyLedger> ledger, double window) {
  if (!(window > 0.0)) throw std::invalid_argument("windowed_dissipation: window must be positive");
  if (ledger.size() < 2) throw std::invalid_argument("windowed_dissipation: trajectory has no steps");
  const double span = ledger.back().t - ledger.front().t;
  const double slack = 1e-9 * window;
  if (window > span + slack) throw std::invalid_argument("windowed_dissipation: window exceeds trajectory span");

  std::vector<WindowSample> out;
  std::size_t j = 0;
  for (std::size_t k = 0; k < ledger.size(); ++k) {
    const double t_end = ledger[k].t + window;
    if (t_end > ledger.back().t + slack) break;
    j = std::max(j, k);
    while (j < ledger.size() && ledger[j].t < t_end - slack) ++j;
    if (j == ledger.size()) break;
    out.push_back({ledger[k].t, ledger[j].dissipated_cumulative - ledger[k].dissipated_cumulative});
  }
  return out;
}

std::vector<WindowSample> windowed_dissipation(const Trajectory& trajectory, double window) {
  return windowed_dissipation(trajectory.energy, window);
}

ConvergenceReport convergence_report(const Trajectory& trajectory, const StationarySolution& stationary,
                                     const BeamProblem& problem, double gap_tol, double v_tol) {
  ConvergenceReport rep;
  const auto& disc = problem.disc();
  const std::size_t n = problem.size();
  if (stationary.u_hat.size() != n) throw std::invalid_argument("convergence_report: stationary size mismatch");

  rep.sigma_T_hat = sigma_T(stationary.u_hat, problem);
  const double floor_slack = 1e-12 * (1.0 + std::abs(rep.sigma_T_hat));
  std::vector<double> diff(n);
  for (const auto& s : trajectory.snapshots) {
    for (std::size_t i = 0; i < n; ++i) diff[i] = s.u[i] - stationary.u_hat[i];
    rep.times.push_back(s.t);
    rep.h2star_gap.push_back(std::sqrt(std::max(h2star_norm_sq(diff, disc), 0.0)));
    rep.v_l2.push_back(std::sqrt(l2_inner(s.v, s.v, disc.quadrature())));
    const double st = sigma_T(s.u, problem);
    rep.sigma_T_series.push_back(st);
    if (st < rep.sigma_T_hat - floor_slack) ++rep.floor_violations;
  }
  if (!rep.sigma_T_series.empty()) rep.sigma_T_gap_final = rep.sigma_T_series.back() - rep.sigma_T_hat;

  // Settled: the suffix of samples that all satisfy both tolerances.
  std::optional<std::size_t> first_ok;
  for (std::size_t k = rep.times.size(); k-- > 0;) {
    if (rep.h2star_gap[k] <= gap_tol && rep.v_l2[k] <= v_tol)
      first_ok = k;
    else
      break;
  }
  if (first_ok) rep.settled_at = rep.times[*first_ok];

  const auto mono = check_energy_monotone(trajectory);
  rep.monotonicity_violations = mono.violations;
  rep.worst_violation = mono.worst;
  return rep;
}

}  // namespace beam
