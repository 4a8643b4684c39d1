#include "beam/energy.hpp"

#include <algorithm>
#include <cmath>

namespace beam {

EnergyLedger energy_of(const State& state, const BeamProblem& problem, double dissipated_cumulative) {
  const auto& s = problem.scenario();
  const auto& disc = problem.disc();
  const auto& quad = disc.quadrature();
  EnergyLedger e;
  e.t = state.t;
  const double v_sq = l2_inner(state.v, state.v, quad);
  const double h2 = h2star_norm_sq(state.u, disc);
  e.kinetic = 0.5 * s.mass * v_sq;
  e.elastic = 0.5 * s.rigidity * h2;
  e.potential = potential_V(state.u, s.restoring, quad);
  e.forcing = -l2_inner(problem.forcing(), state.u, quad);
  e.total = e.kinetic + e.elastic + e.potential + e.forcing;
  e.dissipated_cumulative = dissipated_cumulative;
  e.h2star_norm_u = std::sqrt(std::max(h2, 0.0));
  e.l2_norm_v = std::sqrt(v_sq);
  return e;
}

}  // namespace beam
