#include <gtest/gtest.h>

#include <cmath>

#include "beam/diagnostics.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

namespace beam {
namespace {

using testing::kPi;

std::vector<EnergyLedger> synthetic(std::size_t n, double dt, double e0, double rate) {
  std::vector<EnergyLedger> led(n);
  for (std::size_t k = 0; k < n; ++k) {
    led[k].t = static_cast<double>(k) * dt;
    led[k].dissipated_cumulative = rate * led[k].t;
    led[k].total = e0 - led[k].dissipated_cumulative;
  }
  return led;
}

TEST(Monotone, DetectsSingleRise) {
  auto led = synthetic(50, 0.1, 1.0, 0.5);
  EXPECT_EQ(check_energy_monotone(led, 1e-9).violations, 0u);
  led[20].total = led[19].total + 1e-6;
  const auto m = check_energy_monotone(led, 1e-9);
  EXPECT_EQ(m.violations, 1u);
  EXPECT_NEAR(m.worst, 1e-6, 1e-12);
}

TEST(Monotone, ConservativeScenario) {
  auto sc = testing::canonical_scenario();
  sc.damping = LinearPlusQuadratic{0.0, 0.0};
  sc.forcing = ZeroField{};
  sc.t_end = 10.0;
  const auto traj = run(testing::make(sc, 50));
  ASSERT_EQ(traj.energy.size(), 10001u);
  EXPECT_EQ(check_energy_monotone(traj).violations, 0u);
  EXPECT_LE(std::abs(traj.energy.back().total - traj.energy.front().total), 1e4 * 10 * 1e-10);
  EXPECT_EQ(traj.energy.back().dissipated_cumulative, 0.0);
}

TEST(Identity, ZeroAndConvergedTrajectories) {
  EXPECT_EQ(check_energy_identity(run(testing::make(testing::zero_scenario(), 20))), 0.0);
  auto sc = testing::canonical_scenario();
  sc.t_end = 1.0;
  const auto traj = run(testing::make(sc, 60));
  EXPECT_LE(check_energy_identity(traj), 10 * 1e-10 * 1000);
  EXPECT_EQ(check_energy_monotone(traj).violations, 0u);
}

TEST(Identity, SingleModeBalanceMatchesScalarOracle) {
  // Dissipated energy = E(0) − E(t), both sides from the scalar solution.
  const testing::ScalarOscillator osc{1.0, 0.1, std::pow(kPi, 4), 1.0};
  const auto traj = run(testing::make(testing::single_mode_scenario(0.1), 3, Scheme::SpectralSine));
  for (std::size_t k = 0; k < traj.energy.size(); k += 100) {
    const auto& e = traj.energy[k];
    EXPECT_NEAR(e.dissipated_cumulative, 0.5 * (osc.energy(0.0) - osc.energy(e.t)), 2e-3);
  }
}

TEST(Bounds, ZeroScenario) {
  const auto b = check_bounds(run(testing::make(testing::zero_scenario(), 20)));
  EXPECT_EQ(b.sup_h2star, 0.0);
  EXPECT_EQ(b.sup_dissipated, 0.0);
  EXPECT_TRUE(b.finite);
}

TEST(Bounds, SingleModeSupremumAtStart) {
  const auto traj = run(testing::make(testing::single_mode_scenario(0.1), 3, Scheme::SpectralSine));
  const auto b = check_bounds(traj);
  EXPECT_NEAR(b.sup_h2star, std::pow(kPi, 4) / 2, 1e-9);
  EXPECT_NEAR(b.sup_dissipated, traj.energy.back().dissipated_cumulative, 0.0);
  EXPECT_LT(b.sup_h2star_late, b.sup_h2star);
}

TEST(Windowed, ZeroScenario) {
  const auto w = windowed_dissipation(run(testing::make(testing::zero_scenario(), 20)), 0.5);
  ASSERT_FALSE(w.empty());
  for (const auto& s : w) EXPECT_EQ(s.value, 0.0);
}

TEST(Windowed, ConstantRateGivesConstantSeries) {
  const auto w = windowed_dissipation(synthetic(101, 0.1, 5.0, 0.3), 2.0);
  ASSERT_EQ(w.size(), 81u);
  for (const auto& s : w) EXPECT_NEAR(s.value, 0.6, 1e-12);
  EXPECT_NEAR(w.back().t_start, 8.0, 1e-12);
}

TEST(Windowed, SingleModeDecaysAtDampingRate) {
  // The dissipation rate c·q'² carries e^{−0.1 t} times a sin² factor with
  // period π/ω; windows shifted by a multiple of that period differ by the
  // exponential alone.
  auto sc = testing::single_mode_scenario(0.1);
  sc.t_end = 8.0;
  const auto traj = run(testing::make(sc, 3, Scheme::SpectralSine));
  const auto w = windowed_dissipation(traj, 1.0);
  const double omega = std::sqrt(std::pow(kPi, 4) - 0.0025);
  const double shift = 16 * kPi / omega;
  const std::size_t a = 500, b = a + static_cast<std::size_t>(std::lround(shift / 1e-3));
  ASSERT_LT(b, w.size());
  const double expected = std::exp(-0.1 * (w[b].t_start - w[a].t_start));
  EXPECT_NEAR(w[b].value / w[a].value, expected, 1e-2 * expected);
}

TEST(Windowed, RejectsBadWindows) {
  const auto led = synthetic(11, 0.1, 1.0, 0.1);
  EXPECT_THROW(windowed_dissipation(led, 0.0), std::invalid_argument);
  EXPECT_THROW(windowed_dissipation(led, 1.5), std::invalid_argument);
  EXPECT_THROW(windowed_dissipation(std::span<const EnergyLedger>(led.data(), 1), 0.1), std::invalid_argument);
  EXPECT_EQ(windowed_dissipation(led, 1.0).size(), 1u);
}

TEST(Convergence, StartingAtEquilibriumSettlesImmediately) {
  auto sc = testing::canonical_scenario();
  sc.t_end = 0.5;
  const auto p0 = testing::make(sc, 40);
  const auto st = solve_stationary(p0);
  std::vector<double> u0(42, 0.0);
  std::copy(st.u_hat.begin(), st.u_hat.end(), u0.begin() + 1);
  sc.u0 = NodalSamples{u0};
  const auto p = testing::make(sc, 40);
  RunOptions opts;
  opts.snapshot_stride = 10;
  const auto rep = convergence_report(run(p, opts), st, p, 1e-6, 1e-6);
  ASSERT_TRUE(rep.settled_at.has_value());
  EXPECT_EQ(*rep.settled_at, 0.0);
  EXPECT_EQ(rep.floor_violations, 0u);
  EXPECT_LE(std::abs(rep.sigma_T_gap_final), 1e-14);
}

TEST(Convergence, SingleModeSettlesWhenEnvelopeCrossesTolerance) {
  // ‖u‖_{H²*} and ‖u'‖_{L²} both follow ≈ (π⁴/(ω√2))·e^{−ct/2}.
  const double c = 1.0, tol = 1e-6;
  auto sc = testing::single_mode_scenario(c);
  sc.t_end = 40.0;
  const auto p = testing::make(sc, 3, Scheme::SpectralSine);
  RunOptions opts;
  opts.snapshot_stride = 10;
  const auto traj = run(p, opts);
  const auto st = solve_stationary(p);
  const auto rep = convergence_report(traj, st, p, tol, tol);
  const double omega = std::sqrt(std::pow(kPi, 4) - c * c / 4);
  const double envelope_crossing = std::log(std::pow(kPi, 4) / (omega * std::sqrt(2.0)) / tol) / (c / 2);
  ASSERT_TRUE(rep.settled_at.has_value());
  EXPECT_NEAR(*rep.settled_at, envelope_crossing, 0.7);
  EXPECT_LE(*rep.settled_at, envelope_crossing + 0.01);
  EXPECT_EQ(rep.monotonicity_violations, 0u);
  EXPECT_EQ(rep.floor_violations, 0u);
}

TEST(Convergence, UnsettledRun) {
  auto sc = testing::canonical_scenario();
  sc.t_end = 1.0;
  const auto p = testing::make(sc, 40);
  const auto rep = convergence_report(run(p), solve_stationary(p), p, 1e-6, 1e-6);
  EXPECT_FALSE(rep.settled_at.has_value());
  EXPECT_GT(rep.sigma_T_gap_final, 0.0);
  EXPECT_EQ(rep.times.size(), rep.h2star_gap.size());
}

TEST(Convergence, RejectsMismatchedSolution) {
  const auto p = testing::make(testing::zero_scenario(), 20);
  StationarySolution bad;
  bad.u_hat.assign(19, 0.0);
  EXPECT_THROW(convergence_report(run(p), bad, p, 1e-6, 1e-6), std::invalid_argument);
}

}  // namespace
}  // namespace beam
