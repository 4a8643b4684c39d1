#include "commands.hpp"

#include <spdlog/spdlog.h>

#include <chrono>
#include <cmath>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "beam/diagnostics.hpp"
#include "beam/writers.hpp"
#include "manifest.hpp"
#include "session.hpp"

namespace beam::cli {

namespace fs = std::filesystem;

namespace detail {

int load_config(const fs::path& path, ScenarioConfig& cfg, std::ostream& err) {
  try {
    cfg = load_scenario(path);
  } catch (const fs::filesystem_error& e) {
    err << "error: cannot read scenario " << path.string() << ": " << e.code().message() << "\n";
    return kIoError;
  } catch (const ScenarioError& e) {
    err << "error: invalid scenario: " << e.what() << "\n";
    return kInvalidScenario;
  }
  return kOk;
}

void report_validation(const ValidationReport& report, std::ostream& err) {
  for (const auto& c : report.checks) {
    if (c.status == CheckStatus::Pass) continue;
    if (c.status == CheckStatus::Warn) {
      spdlog::warn("validation {}: {}", c.name, c.message);
      continue;
    }
    err << "validation " << c.name << ": FAIL " << c.message << "\n";
  }
}

std::optional<BeamProblem> bind_problem(const ScenarioConfig& cfg, std::ostream& err) {
  try {
    return make_problem(cfg);
  } catch (const std::invalid_argument& e) {
    err << "error: invalid scenario: " << e.what() << "\n";
    return std::nullopt;
  }
}

}  // namespace detail

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

bool make_out_dir(const fs::path& dir, std::ostream& err) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) {
    err << "error: cannot create output directory " << dir.string() << ": " << ec.message() << "\n";
    return false;
  }
  return true;
}

/// Validates and binds; 0 on success.
int prepare(const fs::path& scenario, ScenarioConfig& cfg, std::optional<BeamProblem>& problem,
            std::ostream& err, const std::vector<std::string>& tolerated = {}) {
  if (int rc = detail::load_config(scenario, cfg, err)) return rc;
  const auto report = validate_scenario(cfg.scenario);
  detail::report_validation(report, err);
  if (!report.accepted_except(tolerated)) return kInvalidScenario;
  for (const auto& name : tolerated)
    if (const auto* c = report.find(name); c && c->status == CheckStatus::Fail)
      spdlog::warn("continuing despite failed check {}", name);
  problem = detail::bind_problem(cfg, err);
  return problem ? kOk : kInvalidScenario;
}

}  // namespace

int cmd_simulate(const fs::path& scenario, const fs::path& out_dir, std::ostream& out, std::ostream& err) {
  const auto start = Clock::now();
  ScenarioConfig cfg;
  std::optional<BeamProblem> problem;
  if (int rc = prepare(scenario, cfg, problem, err)) return rc;

  spdlog::info("simulate {}: {} n={} dt={} t_end={}", scenario.string(), to_string(cfg.discretization.scheme),
               cfg.discretization.n, cfg.scenario.dt, cfg.scenario.t_end);
  Trajectory traj;
  try {
    traj = run(*problem, make_run_options(cfg));
  } catch (const StepError& e) {
    err << "error: solver failure at t = " << e.time() << ": " << e.what() << "\n";
    return kSolverFailure;
  }
  spdlog::info("{} steps, {} Newton iterations", traj.energy.size() - 1, traj.total_newton_iters);

  if (!make_out_dir(out_dir, err)) return kIoError;
  RunManifest manifest{"simulate", scenario.string(), tool_version(), cfg, 0.0, {}, nlohmann::json::object()};
  try {
    atomic_write(out_dir / "trajectory.csv", trajectory_csv(traj, cfg.output.csv_stride));
    manifest.outputs.push_back("trajectory.csv");
    if (cfg.output.snapshots) {
      atomic_write(out_dir / "snapshots.csv", snapshots_csv(traj, problem->disc().grid()));
      manifest.outputs.push_back("snapshots.csv");
    }
    if (cfg.output.plots) {
      atomic_write(out_dir / "energy.svg", energy_svg(traj));
      manifest.outputs.push_back("energy.svg");
      try {
        const auto st = solve_stationary(*problem, std::nullopt, make_stationary_options(cfg));
        const auto rep = convergence_report(traj, st, *problem, cfg.verify.gap_tol, cfg.verify.v_tol);
        atomic_write(out_dir / "gap.svg", gap_svg(rep));
        manifest.outputs.push_back("gap.svg");
      } catch (const StationaryError& e) {
        spdlog::warn("gap.svg skipped: {}", e.what());
      }
    }

    const auto& last = traj.energy.back();
    const auto mono = check_energy_monotone(traj);
    manifest.results = {{"steps", traj.energy.size() - 1},
                        {"energy_initial", traj.energy.front().total},
                        {"energy_final", last.total},
                        {"dissipated_cumulative", last.dissipated_cumulative},
                        {"total_newton_iters", traj.total_newton_iters},
                        {"max_newton_iters", traj.max_newton_iters},
                        {"max_newton_step", traj.max_residual},
                        {"dt_halvings", traj.dt_halvings},
                        {"monotonicity_violations", mono.violations},
                        {"energy_identity_residual", check_energy_identity(traj)}};
    manifest.wall_time_s = seconds_since(start);
    write_manifest(out_dir, manifest);
  } catch (const std::exception& e) {
    err << "error: writing outputs: " << e.what() << "\n";
    return kIoError;
  }
  out << "wrote " << (out_dir / "trajectory.csv").string() << "\n";
  return kOk;
}

int cmd_stationary(const fs::path& scenario, const fs::path& out_dir, std::ostream& out, std::ostream& err) {
  const auto start = Clock::now();
  ScenarioConfig cfg;
  std::optional<BeamProblem> problem;
  // A nonconvex law is left for the solver to detect, so it surfaces as a
  // solver failure.
  if (int rc = prepare(scenario, cfg, problem, err, {"convexity", "potential_bounded_below"})) return rc;

  StationarySolution sol;
  try {
    sol = solve_stationary(*problem, std::nullopt, make_stationary_options(cfg));
  } catch (const StationaryError& e) {
    err << "error: stationary solver failure: " << e.what() << "\n";
    return kSolverFailure;
  }
  spdlog::info("stationary: {} Newton iterations, Sigma_T = {}", sol.newton_iters, sol.sigma_T_value);

  if (!make_out_dir(out_dir, err)) return kIoError;
  RunManifest manifest{"stationary", scenario.string(), tool_version(), cfg, 0.0, {}, nlohmann::json::object()};
  try {
    atomic_write(out_dir / "stationary.csv", stationary_csv(sol, problem->disc().grid()));
    manifest.outputs.push_back("stationary.csv");
    double peak = 0.0;
    for (double x : sol.u_hat) peak = std::max(peak, std::abs(x));
    manifest.results = {{"grad_norm", sol.grad_norm},
                        {"sigma_T", sol.sigma_T_value},
                        {"strong_residual", sol.strong_residual},
                        {"newton_iters", sol.newton_iters},
                        {"max_abs_u_hat", peak}};
    manifest.wall_time_s = seconds_since(start);
    write_manifest(out_dir, manifest);
  } catch (const std::exception& e) {
    err << "error: writing outputs: " << e.what() << "\n";
    return kIoError;
  }
  out << "wrote " << (out_dir / "stationary.csv").string() << "\n";
  return kOk;
}

namespace {

class Table {
 public:
  explicit Table(std::ostream& out) : out_(out) {
    out_ << std::left << std::setw(20) << "check" << std::setw(8) << "status"
         << "detail\n";
  }
  void row(const std::string& name, bool pass, const std::string& detail) {
    out_ << std::left << std::setw(20) << name << std::setw(8) << (pass ? "PASS" : "FAIL") << detail << "\n";
    if (!pass) failed_.push_back(name);
  }
  const std::vector<std::string>& failed() const { return failed_; }

 private:
  std::ostream& out_;
  std::vector<std::string> failed_;
};

std::string sci(double x) {
  std::ostringstream os;
  os << std::scientific << std::setprecision(3) << x;
  return os.str();
}

}  // namespace

int cmd_verify(const fs::path& scenario, std::ostream& out, std::ostream& err) {
  ScenarioConfig cfg;
  if (int rc = detail::load_config(scenario, cfg, err)) return rc;
  Table table(out);

  const auto report = validate_scenario(cfg.scenario);
  detail::report_validation(report, err);
  if (!report.accepted()) {
    std::string names;
    for (const auto& n : report.failures()) names += (names.empty() ? "" : ", ") + n;
    table.row("validation", false, "failed: " + names);
    err << "verification failed: validation\n";
    return kVerifyFailed;
  }
  table.row("validation", true, "");
  const auto problem = detail::bind_problem(cfg, err);
  if (!problem) return kInvalidScenario;

  Trajectory traj;
  StationarySolution st;
  try {
    traj = run(*problem, make_run_options(cfg));
  } catch (const StepError& e) {
    err << "error: solver failure at t = " << e.time() << ": " << e.what() << "\n";
    return kSolverFailure;
  }
  try {
    st = solve_stationary(*problem, std::nullopt, make_stationary_options(cfg));
  } catch (const StationaryError& e) {
    err << "error: stationary solver failure: " << e.what() << "\n";
    return kSolverFailure;
  }
  const std::size_t steps = traj.energy.size() - 1;

  const auto mono = check_energy_monotone(traj);
  table.row("energy_monotone", mono.violations == 0,
            std::to_string(mono.violations) + " violations, largest rise " + sci(mono.worst));

  const double identity = check_energy_identity(traj);
  table.row("energy_identity", identity <= 1e-9 * static_cast<double>(steps), "residual " + sci(identity));

  const auto bounds = check_bounds(traj);
  const double e0 = traj.energy.front().total;
  const double budget = e0 - st.sigma_T_value;
  table.row("bounds", bounds.finite && bounds.sup_dissipated <= budget + 1e-9 * (1.0 + std::abs(e0)),
            "sup H2* " + sci(bounds.sup_h2star) + ", dissipated " + sci(bounds.sup_dissipated) + " <= " +
                sci(budget));

  try {
    const auto windows = windowed_dissipation(traj, cfg.verify.window);
    const double head = windows.front().value, tail = windows.back().value;
    table.row("windowed_trend", tail <= head, "first " + sci(head) + ", last " + sci(tail));
  } catch (const std::invalid_argument& e) {
    table.row("windowed_trend", false, e.what());
  }

  const auto conv = convergence_report(traj, st, *problem, cfg.verify.gap_tol, cfg.verify.v_tol);
  table.row("sigma_floor", conv.floor_violations == 0,
            std::to_string(conv.floor_violations) + " samples below Sigma_T(u_hat)");
  const bool settled = conv.settled_at.has_value() && conv.sigma_T_gap_final <= cfg.verify.sigma_gap_tol;
  std::string detail = conv.settled_at ? "settled at t = " + std::to_string(*conv.settled_at) : "not settled";
  detail += ", Sigma_T gap " + sci(conv.sigma_T_gap_final);
  table.row("settled", settled, detail);

  if (!table.failed().empty()) {
    std::string names;
    for (const auto& n : table.failed()) names += (names.empty() ? "" : ", ") + n;
    err << "verification failed: " << names << "\n";
    return kVerifyFailed;
  }
  return kOk;
}

}  // namespace beam::cli
