#pragma once

#include <span>
#include <vector>

#include "beam/discretization.hpp"
#include "beam/model.hpp"

namespace beam {

/// Semi-discrete pair (u, v = u') at time t on the interior nodes.
struct State {
  double t{0.0};
  std::vector<double> u;
  std::vector<double> v;
};

/// A scenario bound to a discretization, with the forcing sampled once.
/// Immutable after construction.
class BeamProblem {
 public:
  BeamProblem(BeamScenario scenario, Discretization disc);

  const BeamScenario& scenario() const { return scenario_; }
  const Discretization& disc() const { return disc_; }
  std::span<const double> forcing() const { return forcing_; }
  std::size_t size() const { return disc_.size(); }

 private:
  BeamScenario scenario_;
  Discretization disc_;
  std::vector<double> forcing_;
};

State initial_state(const BeamProblem& problem);

}  // namespace beam
