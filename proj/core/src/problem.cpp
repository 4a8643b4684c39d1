#include "beam/problem.hpp"

#include <stdexcept>
#include <utility>

namespace beam {

BeamProblem::BeamProblem(BeamScenario scenario, Discretization disc)
    : scenario_(std::move(scenario)), disc_(std::move(disc)) {
  if (disc_.grid().a() != scenario_.a || disc_.grid().b() != scenario_.b)
    throw std::invalid_argument("discretization domain does not match the scenario domain");
  forcing_ = disc_.sample(scenario_.forcing);
  // Fail here, not at the first run, on initial data that does not fit the grid.
  (void)disc_.sample(scenario_.u0);
  (void)disc_.sample(scenario_.u1);
}

State initial_state(const BeamProblem& problem) {
  return State{0.0, problem.disc().sample(problem.scenario().u0), problem.disc().sample(problem.scenario().u1)};
}

}  // namespace beam
