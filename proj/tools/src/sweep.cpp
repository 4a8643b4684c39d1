#include <spdlog/spdlog.h>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <ostream>
#include <set>
#include <stdexcept>
#include <thread>

#include "beam/diagnostics.hpp"
#include "beam/writers.hpp"
#include "commands.hpp"
#include "manifest.hpp"
#include "session.hpp"

namespace beam::cli {

namespace fs = std::filesystem;

SweepParam parse_sweep_param(std::string_view spec) {
  const auto eq = spec.find('=');
  if (eq == std::string_view::npos) throw std::invalid_argument("sweep parameter '" + std::string(spec) + "' has no '='");
  SweepParam p;
  p.key = std::string(spec.substr(0, eq));
  if (p.key.empty()) throw std::invalid_argument("sweep parameter '" + std::string(spec) + "' has no key");
  std::string_view rest = spec.substr(eq + 1);
  while (!rest.empty()) {
    const auto comma = rest.find(',');
    const std::string_view item = rest.substr(0, comma);
    if (item.empty()) throw std::invalid_argument("empty value in sweep parameter '" + std::string(spec) + "'");
    p.values.emplace_back(item);
    if (comma == std::string_view::npos) break;
    rest.remove_prefix(comma + 1);
    if (rest.empty()) throw std::invalid_argument("trailing ',' in sweep parameter '" + std::string(spec) + "'");
  }
  return p;
}

namespace {

struct SweepRow {
  std::vector<std::string> values;
  bool ok{false};
  std::optional<double> settled_at;
  double energy_final{0.0};
  double dissipated{0.0};
  long total_newton{0};
  int max_newton{0};
  int halvings{0};
  std::string message;
};

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c == '\n' ? ' ' : c;
  }
  return out + "\"";
}

void run_row(const ScenarioConfig& base, const std::vector<SweepParam>& params, SweepRow& row) {
  ScenarioConfig cfg = base;
  try {
    for (std::size_t k = 0; k < params.size(); ++k) set_parameter(cfg, params[k].key, row.values[k]);
  } catch (const ScenarioError& e) {
    row.message = e.what();
    return;
  }
  const auto report = validate_scenario(cfg.scenario);
  if (!report.accepted()) {
    for (const auto& n : report.failures()) row.message += (row.message.empty() ? "invalid: " : ", ") + n;
    return;
  }
  try {
    const BeamProblem problem = make_problem(cfg);
    const Trajectory traj = run(problem, make_run_options(cfg));
    const auto st = solve_stationary(problem, std::nullopt, make_stationary_options(cfg));
    const auto conv = convergence_report(traj, st, problem, cfg.verify.gap_tol, cfg.verify.v_tol);
    row.settled_at = conv.settled_at;
    row.energy_final = traj.energy.back().total;
    row.dissipated = traj.energy.back().dissipated_cumulative;
    row.total_newton = traj.total_newton_iters;
    row.max_newton = traj.max_newton_iters;
    row.halvings = traj.dt_halvings;
    row.ok = true;
  } catch (const std::exception& e) {
    row.message = e.what();
  }
}

}  // namespace

int cmd_sweep(const fs::path& scenario, const std::vector<SweepParam>& params, const fs::path& out_dir,
              unsigned jobs, std::ostream& out, std::ostream& err) {
  const auto start = std::chrono::steady_clock::now();
  ScenarioConfig base;
  if (int rc = detail::load_config(scenario, base, err)) return rc;
  std::set<std::string> seen;
  for (const auto& p : params)
    if (!seen.insert(p.key).second) {
      err << "error: sweep parameter " << p.key << " given twice\n";
      return kInvalidScenario;
    }

  // Enumerate the product with the first parameter outermost. No parameters,
  // or any empty list, gives no rows.
  std::vector<SweepRow> rows;
  const bool empty = params.empty() || std::any_of(params.begin(), params.end(),
                                                   [](const SweepParam& p) { return p.values.empty(); });
  if (!empty) {
    std::vector<std::size_t> idx(params.size(), 0);
    while (true) {
      SweepRow row;
      for (std::size_t k = 0; k < params.size(); ++k) row.values.push_back(params[k].values[idx[k]]);
      rows.push_back(std::move(row));
      std::size_t k = params.size();
      while (k > 0 && ++idx[k - 1] == params[k - 1].values.size()) idx[--k] = 0;
      if (k == 0) break;
    }
  }

  if (jobs == 0) jobs = std::max(1u, std::thread::hardware_concurrency());
  jobs = static_cast<unsigned>(std::min<std::size_t>(jobs, std::max<std::size_t>(rows.size(), 1)));
  spdlog::info("sweep: {} runs on {} threads", rows.size(), jobs);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < rows.size();) {
      run_row(base, params, rows[i]);
      spdlog::debug("sweep run {} {}", i, rows[i].ok ? "ok" : rows[i].message);
    }
  };
  {
    std::vector<std::jthread> pool;
    for (unsigned t = 1; t < jobs; ++t) pool.emplace_back(worker);
    worker();
  }

  std::string csv;
  for (const auto& p : params) csv += csv_field(p.key) + ",";
  csv += "status,settled_at,energy_final,dissipated_cumulative,total_newton_iters,max_newton_iters,dt_halvings,message\n";
  std::size_t failures = 0;
  for (const auto& r : rows) {
    for (const auto& v : r.values) csv += csv_field(v) + ",";
    if (r.ok) {
      csv += "ok,";
      csv += (r.settled_at ? format_double(*r.settled_at) : std::string()) + ",";
      csv += format_double(r.energy_final) + "," + format_double(r.dissipated) + ",";
      csv += std::to_string(r.total_newton) + "," + std::to_string(r.max_newton) + "," + std::to_string(r.halvings) +
             ",\n";
    } else {
      ++failures;
      csv += "failed,,,,,,," + csv_field(r.message) + "\n";
    }
  }

  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec) {
    err << "error: cannot create output directory " << out_dir.string() << ": " << ec.message() << "\n";
    return kIoError;
  }
  try {
    atomic_write(out_dir / "sweep.csv", csv);
    RunManifest manifest{"sweep", scenario.string(), tool_version(), base, 0.0, {"sweep.csv"},
                         nlohmann::json::object()};
    nlohmann::json plist = nlohmann::json::array();
    for (const auto& p : params) plist.push_back({{"key", p.key}, {"values", p.values}});
    manifest.results = {{"parameters", plist}, {"runs", rows.size()}, {"failed", failures}, {"jobs", jobs}};
    manifest.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    write_manifest(out_dir, manifest);
  } catch (const std::exception& e) {
    err << "error: writing outputs: " << e.what() << "\n";
    return kIoError;
  }
  out << "wrote " << (out_dir / "sweep.csv").string() << " (" << rows.size() << " runs, " << failures
      << " failed)\n";
  if (!rows.empty() && failures == rows.size()) {
    err << "error: every sweep run failed\n";
    return kSolverFailure;
  }
  return kOk;
}

}  // namespace beam::cli
