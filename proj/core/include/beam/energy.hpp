#pragma once

#include "beam/problem.hpp"

namespace beam {

/// Energy bookkeeping at one instant. total = kinetic + elastic + potential +
/// forcing, where forcing = −(f, u) is the load potential.
struct EnergyLedger {
  double t{0.0};
  double kinetic{0.0};
  double elastic{0.0};
  double potential{0.0};
  double forcing{0.0};
  double total{0.0};
  double dissipated_cumulative{0.0};
  double h2star_norm_u{0.0};
  double l2_norm_v{0.0};
};

EnergyLedger energy_of(const State& state, const BeamProblem& problem, double dissipated_cumulative = 0.0);

}  // namespace beam
