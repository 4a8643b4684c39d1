#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>

#include "beam/model.hpp"
#include "beam/problem.hpp"
#include "beam/scenario_io.hpp"

namespace beam::cli::detail {

/// Loads and parses a scenario file. Returns 0 or an exit code after
/// reporting to err.
int load_config(const std::filesystem::path& path, ScenarioConfig& cfg, std::ostream& err);

void report_validation(const ValidationReport& report, std::ostream& err);

/// Binds the config to its discretization; std::nullopt (message on err)
/// if the fields do not fit the grid.
std::optional<BeamProblem> bind_problem(const ScenarioConfig& cfg, std::ostream& err);

}  // namespace beam::cli::detail
