#pragma once

#include <cstddef>

#include "beam/discretization.hpp"
#include "beam/model.hpp"
#include "beam/problem.hpp"

namespace beam::testing {

/// Cubic restoring force, c = d = 1, f = sin(πx), u0 = 0.5 sin(πx).
BeamScenario canonical_scenario();

/// q'' + c q' + π⁴ q = 0 in the first sine mode: linear damping c, no
/// restoring force, no load, u0 = sin(πx).
BeamScenario single_mode_scenario(double c = 0.1);

/// Everything zero.
BeamScenario zero_scenario();

/// Linear(κ), f = sin(πx), linear damping.
BeamScenario linear_scenario(double kappa = 1.0);

BeamProblem make(const BeamScenario& s, std::size_t n, Scheme scheme = Scheme::FiniteDifference);

}  // namespace beam::testing
