#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace beam::cli {

enum ExitCode : int {
  kOk = 0,
  kVerifyFailed = 1,
  kInvalidScenario = 2,
  kSolverFailure = 3,
  kIoError = 4,
};

/// Runs the time integration and writes trajectory.csv, optional
/// snapshots.csv / energy.svg / gap.svg, then manifest.json.
int cmd_simulate(const std::filesystem::path& scenario, const std::filesystem::path& out_dir, std::ostream& out,
                 std::ostream& err);

/// Solves for the equilibrium and writes stationary.csv and manifest.json.
int cmd_stationary(const std::filesystem::path& scenario, const std::filesystem::path& out_dir, std::ostream& out,
                   std::ostream& err);

/// Validation, simulation, stationary solve and every diagnostic check.
/// Prints a PASS/FAIL table; exit 0 iff everything passes.
int cmd_verify(const std::filesystem::path& scenario, std::ostream& out, std::ostream& err);

struct SweepParam {
  std::string key;  // dotted, e.g. "damping.c"
  std::vector<std::string> values;
};

/// "damping.c=0.1,1.0" -> {"damping.c", {"0.1", "1.0"}}. An empty list after
/// '=' is allowed. Throws std::invalid_argument on a missing '=' or key.
SweepParam parse_sweep_param(std::string_view spec);

/// One run per element of the Cartesian product, rows in index order with
/// the first parameter outermost. Writes sweep.csv and manifest.json.
int cmd_sweep(const std::filesystem::path& scenario, const std::vector<SweepParam>& params,
              const std::filesystem::path& out_dir, unsigned jobs, std::ostream& out, std::ostream& err);

}  // namespace beam::cli
