// Runs every acceptance criterion and prints one PASS/FAIL line each.
// Exit status is nonzero if any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <functional>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "beam/diagnostics.hpp"
#include "beam/dynamics.hpp"
#include "beam/stationary.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

namespace {

using namespace beam;
using testing::kPi;

struct Outcome {
  bool pass{false};
  std::string detail;
};

std::string fmt(const char* f, double a) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), f, a);
  return buf;
}

// The canonical run is shared by several criteria.
struct CanonicalRun {
  BeamProblem problem;
  Trajectory traj;
};

const CanonicalRun& canonical() {
  static const CanonicalRun run_once = [] {
    BeamProblem p = testing::make(testing::canonical_scenario(), 200);
    RunOptions opts;
    opts.snapshot_stride = 100;
    Trajectory t = run(p, opts);
    return CanonicalRun{std::move(p), std::move(t)};
  }();
  return run_once;
}

Outcome energy_monotonicity() {
  const auto& c = canonical();
  const auto m = check_energy_monotone(c.traj.energy, 10 * 1e-10);
  return {m.violations == 0, std::to_string(m.violations) + " violations over " +
                                 std::to_string(c.traj.energy.size() - 1) + " steps, largest rise " +
                                 fmt("%.2e", m.worst)};
}

Outcome energy_identity() {
  const auto& c = canonical();
  const double worst = check_energy_identity(c.traj);
  const double bound = 1e-9 * static_cast<double>(c.traj.energy.size() - 1);
  return {worst <= bound, "residual " + fmt("%.2e", worst) + " <= " + fmt("%.1e", bound)};
}

Outcome conservative_limit() {
  auto sc = testing::canonical_scenario();
  sc.damping = LinearPlusQuadratic{0.0, 0.0};
  sc.forcing = ZeroField{};
  sc.t_end = 10.0;
  const auto traj = run(testing::make(sc, 200));
  const double drift = std::abs(traj.energy.back().total - traj.energy.front().total);
  const bool steps_ok = traj.energy.size() == 10001;
  return {steps_ok && drift <= 1e-5,
          std::to_string(traj.energy.size() - 1) + " steps, |E(t_end) - E(0)| = " + fmt("%.2e", drift)};
}

Outcome stationary_linear() {
  std::string detail;
  bool pass = true;
  for (Scheme scheme : {Scheme::FiniteDifference, Scheme::SpectralSine}) {
    const auto p = testing::make(testing::linear_scenario(1.0), 200, scheme);
    const auto s = solve_stationary(p);
    double err = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i)
      err = std::max(err, std::abs(s.u_hat[i] - std::sin(kPi * p.disc().grid().node(i)) / (std::pow(kPi, 4) + 1)));
    const double limit = scheme == Scheme::FiniteDifference ? 1e-6 : 1e-12;
    pass = pass && err <= limit && s.newton_iters <= 2;
    detail += to_string(scheme) + " error " + fmt("%.2e", err) + " in " + std::to_string(s.newton_iters) +
              " iterations; ";
  }
  detail.resize(detail.size() - 2);
  return {pass, detail};
}

Outcome convergence_to_equilibrium() {
  const auto& c = canonical();
  const auto st = solve_stationary(c.problem);
  const auto rep = convergence_report(c.traj, st, c.problem, 1e-6, 1e-6);
  const bool pass = rep.settled_at.has_value() && rep.sigma_T_gap_final <= 1e-10;
  return {pass, (rep.settled_at ? "settled at t = " + fmt("%.2f", *rep.settled_at) : std::string("not settled")) +
                    ", Sigma_T gap " + fmt("%.2e", rep.sigma_T_gap_final)};
}

Outcome dissipation_bounded() {
  const auto& led = canonical().traj.energy;
  const std::size_t half = (led.size() - 1) / 2;
  const double tail = led.back().dissipated_cumulative - led[half].dissipated_cumulative;
  return {tail <= 1e-8, "D(t_end) - D(t_end/2) = " + fmt("%.2e", tail)};
}

Outcome windowed_trend() {
  // Eventually below: every window from some start on is below the
  // threshold, and that tail covers at least the second half of the run.
  const auto& c = canonical();
  const auto w = windowed_dissipation(c.traj, 1.0);
  std::optional<double> from;
  for (std::size_t k = w.size(); k-- > 0;) {
    if (w[k].value >= 1e-10) break;
    from = w[k].t_start;
  }
  const double t_end = c.traj.energy.back().t;
  const bool pass = from.has_value() && *from <= t_end / 2;
  return {pass, from ? "below 1e-10 for every window starting at t >= " + fmt("%.2f", *from)
                     : "last window " + fmt("%.2e", w.back().value)};
}

Outcome integrator_order() {
  const testing::ScalarOscillator osc{1.0, 0.1, std::pow(kPi, 4), 1.0};
  std::vector<double> errs;
  for (double dt : {1e-3, 5e-4, 2.5e-4}) {
    auto sc = testing::single_mode_scenario(0.1);
    sc.dt = dt;
    const auto p = testing::make(sc, 3, Scheme::SpectralSine);
    RunOptions opts;
    opts.newton.tol = 1e-14;
    opts.snapshot_stride = 1u << 30;
    const auto traj = run(p, opts);
    errs.push_back(std::abs(testing::sine_coefficients(traj.snapshots.back().u)[0] - osc.position(1.0)));
  }
  bool pass = true;
  std::string detail = "errors";
  for (double e : errs) detail += " " + fmt("%.3e", e);
  detail += ", ratios";
  for (std::size_t k = 1; k < errs.size(); ++k) {
    const double r = errs[k - 1] / errs[k];
    pass = pass && std::abs(r - 4.0) <= 0.8;
    detail += " " + fmt("%.3f", r);
  }
  return {pass, detail};
}

std::vector<double> state_at_one(Scheme scheme, std::size_t n) {
  auto sc = testing::canonical_scenario();
  sc.t_end = 1.0;
  RunOptions opts;
  opts.snapshot_stride = 1u << 30;
  return run(testing::make(sc, n, scheme), opts).snapshots.back().u;
}

Outcome spatial_order() {
  const auto spectral = state_at_one(Scheme::SpectralSine, 200);
  const auto coeffs = testing::sine_coefficients(spectral);
  std::vector<double> errs;
  for (std::size_t n : {50u, 100u, 200u}) {
    const auto fd = state_at_one(Scheme::FiniteDifference, n);
    const Discretization d(0.0, 1.0, n, Scheme::FiniteDifference);
    std::vector<double> diff(n);
    for (std::size_t i = 0; i < n; ++i) diff[i] = fd[i] - testing::sine_series(coeffs, d.grid().node(i), 0.0, 1.0);
    errs.push_back(std::sqrt(h2star_norm_sq(diff, d)));
  }
  bool pass = errs.back() <= 5e-4;
  std::string detail = "H2* difference at n = 50, 100, 200:";
  for (double e : errs) detail += " " + fmt("%.3e", e);
  detail += "; ratios";
  for (std::size_t k = 1; k < errs.size(); ++k) {
    const double r = errs[k - 1] / errs[k];
    pass = pass && std::abs(r - 4.0) <= 0.8;
    detail += " " + fmt("%.3f", r);
  }
  return {pass, detail};
}

Outcome minimizer_uniqueness() {
  const auto p = testing::make(testing::canonical_scenario(), 200);
  std::mt19937 rng(20240601);
  std::normal_distribution<double> d;
  std::vector<std::vector<double>> sols;
  for (int trial = 0; trial < 5; ++trial) {
    std::vector<double> guess(p.size());
    const double a = d(rng), b = d(rng), c = d(rng);
    for (std::size_t i = 0; i < p.size(); ++i) {
      const double x = p.disc().grid().node(i);
      guess[i] = a * std::sin(kPi * x) + b * std::sin(2 * kPi * x) + c * std::sin(5 * kPi * x) + 0.05 * d(rng);
    }
    sols.push_back(solve_stationary(p, guess).u_hat);
  }
  double worst = 0.0;
  for (std::size_t i = 0; i < sols.size(); ++i)
    for (std::size_t j = i + 1; j < sols.size(); ++j)
      for (std::size_t k = 0; k < p.size(); ++k) worst = std::max(worst, std::abs(sols[i][k] - sols[j][k]));
  return {worst <= 1e-8, "largest pairwise max-norm difference " + fmt("%.2e", worst)};
}

Outcome rk4_equivalence() {
  auto sc = testing::canonical_scenario();
  sc.t_end = 0.5;
  const auto p = testing::make(sc, 200);
  RunOptions opts;
  opts.snapshot_stride = 1u << 30;
  const auto u = run(p, opts).snapshots.back().u;
  const auto ref = testing::rk4_reference(p, sc.dt / 100, sc.t_end);
  std::vector<double> diff(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) diff[i] = u[i] - ref.u[i];
  const double err = std::sqrt(l2_inner(diff, diff, p.disc().quadrature()));
  return {err <= 1e-5, "L2 difference at t = 0.5: " + fmt("%.3e", err)};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"energy monotonicity", energy_monotonicity},
      {"energy identity telescoping", energy_identity},
      {"conservative limit", conservative_limit},
      {"stationary linear benchmark", stationary_linear},
      {"convergence to equilibrium", convergence_to_equilibrium},
      {"dissipation integral bounded", dissipation_bounded},
      {"windowed dissipation trend", windowed_trend},
      {"time integrator order", integrator_order},
      {"spatial order and scheme cross-check", spatial_order},
      {"uniqueness of minimizer", minimizer_uniqueness},
      {"RK4 oracle equivalence", rk4_equivalence},
  };
  int failures = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[k].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (!o.pass) ++failures;
    std::printf("%s %2zu %-38s %s (%.1fs)\n", o.pass ? "PASS" : "FAIL", k + 1, criteria[k].first.c_str(),
                o.detail.c_str(), secs);
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
