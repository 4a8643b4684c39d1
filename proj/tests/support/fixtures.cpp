#include "fixtures.hpp"

namespace beam::testing {

BeamScenario canonical_scenario() { return BeamScenario{}; }

BeamScenario single_mode_scenario(double c) {
  BeamScenario s;
  s.damping = LinearPlusQuadratic{c, 0.0};
  s.restoring = ZeroRestoring{};
  s.forcing = ZeroField{};
  s.u0 = SineMode{1.0, 1};
  s.u1 = ZeroField{};
  s.t_end = 1.0;
  return s;
}

BeamScenario zero_scenario() {
  BeamScenario s;
  s.forcing = ZeroField{};
  s.u0 = ZeroField{};
  s.u1 = ZeroField{};
  s.t_end = 1.0;
  s.dt = 1e-2;
  return s;
}

BeamScenario linear_scenario(double kappa) {
  BeamScenario s;
  s.damping = LinearPlusQuadratic{1.0, 0.0};
  s.restoring = LinearRestoring{kappa};
  s.u0 = ZeroField{};
  return s;
}

BeamProblem make(const BeamScenario& s, std::size_t n, Scheme scheme) {
  return BeamProblem(s, Discretization(s.a, s.b, n, scheme));
}

}  // namespace beam::testing
