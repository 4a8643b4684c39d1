#pragma once

#include <cstddef>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>

#include "beam/discretization.hpp"
#include "beam/dynamics.hpp"
#include "beam/model.hpp"
#include "beam/problem.hpp"
#include "beam/stationary.hpp"

namespace beam {

struct DiscretizationConfig {
  Scheme scheme{Scheme::FiniteDifference};
  std::size_t n{200};
};

struct SolverConfig {
  double newton_tol{1e-10};
  int newton_max_iter{50};
  double stationary_tol{1e-10};
  int stationary_max_iter{50};
};

/// Thresholds for the verification checks. Calibrated per scenario.
struct VerifyConfig {
  double gap_tol{1e-6};
  double v_tol{1e-6};
  double window{1.0};
  double sigma_gap_tol{1e-10};
};

struct OutputConfig {
  std::size_t snapshot_stride{100};
  std::size_t csv_stride{1};
  bool plots{true};
  bool snapshots{false};
};

/// Everything a scenario file holds.
struct ScenarioConfig {
  BeamScenario scenario;
  DiscretizationConfig discretization;
  SolverConfig solver;
  VerifyConfig verify;
  OutputConfig output;
};

bool operator==(const ScenarioConfig&, const ScenarioConfig&);

class ScenarioError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Parses the TOML-compatible scenario format:
///
///   [domain]         a, b
///   [physics]        m, sigma
///   [damping]        type = "linear_quadratic" (c, d) | "power" (delta, p)
///   [restoring]      type = "zero" | "linear" | "cubic" (kappa) | "smoothed_one_sided" (kappa, eps)
///   [forcing]        type = "zero" | "sine" (amplitude, mode) | "samples" (values)
///   [initial]        u0_type, u0_amplitude, u0_mode, u0_values, u1_… likewise
///   [time]           dt, t_end
///   [discretization] scheme = "fd" | "spectral", n
///   [solver]         newton_tol, newton_max_iter, stationary_tol, stationary_max_iter
///   [verify]         gap_tol, v_tol, window, sigma_gap_tol
///   [output]         snapshot_stride, csv_stride, plots, snapshots
///
/// Missing keys take the canonical defaults. Unknown sections, unknown keys
/// and keys that do not apply to the selected type are errors.
ScenarioConfig parse_scenario(std::string_view text);

/// Throws std::filesystem::filesystem_error if the file cannot be read and
/// ScenarioError if it does not parse.
ScenarioConfig load_scenario(const std::filesystem::path& path);

/// Canonical form: every section, only the keys that apply, 17 significant
/// digits. parse_scenario(write_scenario(c)) == c.
std::string write_scenario(const ScenarioConfig& config);

/// Overrides one dotted key, e.g. set_parameter(c, "damping.c", "0.1").
void set_parameter(ScenarioConfig& config, std::string_view dotted_key, std::string_view value);

Discretization make_discretization(const ScenarioConfig& config);
BeamProblem make_problem(const ScenarioConfig& config);
RunOptions make_run_options(const ScenarioConfig& config);
StationaryOptions make_stationary_options(const ScenarioConfig& config);

}  // namespace beam
