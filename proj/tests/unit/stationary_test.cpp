#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "beam/stationary.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

namespace beam {
namespace {

using testing::kPi;

double linear_error(const StationarySolution& s, const BeamProblem& p, double kappa) {
  double err = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i)
    err = std::max(err, std::abs(s.u_hat[i] - std::sin(kPi * p.disc().grid().node(i)) / (std::pow(kPi, 4) + kappa)));
  return err;
}

TEST(Stationary, LinearBenchmarkFd) {
  const auto p = testing::make(testing::linear_scenario(), 200);
  const auto s = solve_stationary(p);
  EXPECT_LE(linear_error(s, p, 1.0), 1e-6);
  EXPECT_LE(s.newton_iters, 2);
}

TEST(Stationary, LinearBenchmarkSpectral) {
  const auto p = testing::make(testing::linear_scenario(), 201, Scheme::SpectralSine);
  const auto s = solve_stationary(p);
  EXPECT_LE(linear_error(s, p, 1.0), 1e-12);
  EXPECT_LE(s.newton_iters, 2);
  EXPECT_NEAR(*std::max_element(s.u_hat.begin(), s.u_hat.end()), 0.010162, 1e-6);
}

TEST(Stationary, ZeroLoadGivesZero) {
  for (const RestoringLaw& law : {RestoringLaw{ZeroRestoring{}}, RestoringLaw{LinearRestoring{2.0}},
                                  RestoringLaw{CubicRestoring{1.0}}}) {
    auto sc = testing::canonical_scenario();
    sc.restoring = law;
    sc.forcing = ZeroField{};
    const auto s = solve_stationary(testing::make(sc, 50));
    for (double x : s.u_hat) EXPECT_LE(std::abs(x), 1e-10);
  }
}

TEST(Stationary, CubicMatchesGradientDescentOracle) {
  for (Scheme scheme : {Scheme::FiniteDifference, Scheme::SpectralSine}) {
    const std::size_t n = scheme == Scheme::FiniteDifference ? 200 : 31;
    const auto p = testing::make(testing::canonical_scenario(), n, scheme);
    const auto s = solve_stationary(p);
    const auto ref = testing::gradient_descent_stationary(p, 1e-12);
    double err = 0.0;
    for (std::size_t i = 0; i < n; ++i) err = std::max(err, std::abs(s.u_hat[i] - ref[i]));
    EXPECT_LE(err, 1e-8) << to_string(scheme);
  }
}

TEST(Stationary, SmoothedOneSidedMatchesOracle) {
  auto sc = testing::canonical_scenario();
  sc.restoring = SmoothedOneSided{5.0, 0.01};
  sc.forcing = SineMode{-2.0, 1};
  const auto p = testing::make(sc, 60);
  const auto s = solve_stationary(p);
  const auto ref = testing::gradient_descent_stationary(p, 1e-13);
  for (std::size_t i = 0; i < p.size(); ++i) EXPECT_NEAR(s.u_hat[i], ref[i], 1e-8);
}

TEST(Stationary, RandomRestartsAgree) {
  const auto p = testing::make(testing::canonical_scenario(), 100);
  std::mt19937 rng(2024);
  std::normal_distribution<double> d(0.0, 1.0);
  const auto base = solve_stationary(p).u_hat;
  for (int trial = 0; trial < 5; ++trial) {
    std::vector<double> guess(p.size());
    const double a = 2.0 * d(rng), b = d(rng);
    for (std::size_t i = 0; i < p.size(); ++i) {
      const double x = p.disc().grid().node(i);
      guess[i] = a * std::sin(kPi * x) + b * std::sin(3 * kPi * x) + 0.1 * d(rng);
    }
    const auto s = solve_stationary(p, guess);
    for (std::size_t i = 0; i < p.size(); ++i) EXPECT_NEAR(s.u_hat[i], base[i], 1e-8);
  }
}

TEST(Stationary, MinimizesSigmaT) {
  const auto p = testing::make(testing::canonical_scenario(), 64, Scheme::SpectralSine);
  const auto s = solve_stationary(p);
  std::mt19937 rng(9);
  std::normal_distribution<double> d;
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<double> u = s.u_hat;
    for (std::size_t k = 1; k <= 5; ++k) {
      const double c = 1e-3 * d(rng);
      for (std::size_t i = 0; i < u.size(); ++i) u[i] += c * std::sin(k * kPi * p.disc().grid().node(i));
    }
    EXPECT_GT(sigma_T(u, p), s.sigma_T_value);
  }
}

TEST(Stationary, NonConvexLawDetected) {
  auto sc = testing::canonical_scenario();
  sc.restoring = LinearRestoring{-1.0};
  try {
    solve_stationary(testing::make(sc, 30));
    FAIL() << "expected StationaryError";
  } catch (const StationaryError& e) {
    EXPECT_EQ(e.kind(), StationaryErrorKind::NonConvexDetected);
  }
}

TEST(Stationary, IterationBudget) {
  const auto p = testing::make(testing::canonical_scenario(), 30);
  try {
    solve_stationary(p, std::nullopt, StationaryOptions{1e-10, 1});
    FAIL() << "expected StationaryError";
  } catch (const StationaryError& e) {
    EXPECT_EQ(e.kind(), StationaryErrorKind::MaxIterExceeded);
  }
  EXPECT_THROW(solve_stationary(p, std::vector<double>(29, 0.0)), std::invalid_argument);
}

TEST(SigmaT, KnownValues) {
  auto sc = testing::canonical_scenario();
  sc.restoring = LinearRestoring{1.0};
  sc.forcing = ZeroField{};
  const auto p = testing::make(sc, 63, Scheme::SpectralSine);
  EXPECT_EQ(sigma_T(std::vector<double>(63, 0.0), p), 0.0);
  std::vector<double> u(63);
  for (std::size_t i = 0; i < 63; ++i) u[i] = std::sin(kPi * p.disc().grid().node(i));
  EXPECT_NEAR(sigma_T(u, p), std::pow(kPi, 4) / 4 + 0.25, 1e-10);
}

TEST(SigmaT, QuadraticIdentityAtMinimizer) {
  // For a linear law Σ_T(û) = −½ (f, û).
  const auto p = testing::make(testing::linear_scenario(), 120);
  const auto s = solve_stationary(p);
  EXPECT_NEAR(s.sigma_T_value, -0.5 * l2_inner(p.forcing(), s.u_hat, p.disc().quadrature()), 1e-14);
  // The sampled sine is an FD eigenvector, so the discrete value is exact in
  // terms of the FD eigenvalue; it sits O(h²) from the continuum value.
  const double h = p.disc().grid().spacing();
  const double lam_h = std::pow(4 / (h * h) * std::pow(std::sin(kPi * h / 2), 2), 2);
  EXPECT_NEAR(s.sigma_T_value, -0.25 / (lam_h + 1), 1e-14);
  const double continuum = -0.25 / (std::pow(kPi, 4) + 1);
  EXPECT_NEAR(s.sigma_T_value, continuum, 2 * h * h * std::abs(continuum));
}

TEST(Residual, AtMinimizer) {
  const auto spec = testing::make(testing::canonical_scenario(), 31, Scheme::SpectralSine);
  EXPECT_LE(solve_stationary(spec).strong_residual, 1e-10);
  // FD: roundoff in A u scales with the largest eigenvalue.
  const auto fd = testing::make(testing::canonical_scenario(), 200);
  const auto s = solve_stationary(fd);
  double umax = 0.0;
  for (double x : s.u_hat) umax = std::max(umax, std::abs(x));
  EXPECT_LE(s.strong_residual, 1e-13 * fd.disc().op().eigenvalues().back() * umax);
  EXPECT_LE(s.grad_norm, 1e-10);
}

TEST(Residual, ZeroStateGivesLoad) {
  const auto p = testing::make(testing::canonical_scenario(), 41);
  double fmax = 0.0;
  for (double f : p.forcing()) fmax = std::max(fmax, std::abs(f));
  EXPECT_DOUBLE_EQ(residual_bvp(std::vector<double>(41, 0.0), p), fmax);
}

TEST(Residual, LinearInPerturbation) {
  const auto p = testing::make(testing::linear_scenario(), 63, Scheme::SpectralSine);
  auto u = solve_stationary(p).u_hat;
  // The residual at the minimizer is transform roundoff, ~ε·λ_max·|u|.
  const double floor = residual_bvp(u, p);
  EXPECT_LE(floor, 1e-15 * p.disc().op().eigenvalues().back() * 0.011);
  for (std::size_t i = 0; i < u.size(); ++i) u[i] += 1e-3 * std::sin(kPi * p.disc().grid().node(i));
  EXPECT_NEAR(residual_bvp(u, p), 1e-3 * (std::pow(kPi, 4) + 1), floor + 1e-12);
}

}  // namespace
}  // namespace beam
