#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "beam/diagnostics.hpp"
#include "beam/discretization.hpp"
#include "beam/dynamics.hpp"
#include "beam/stationary.hpp"

namespace beam {

/// 17 significant digits, so values round-trip exactly.
std::string format_double(double x);

/// Writes to a temporary sibling and renames it into place.
/// Throws std::filesystem::filesystem_error.
void atomic_write(const std::filesystem::path& path, std::string_view content);

/// t, energy_total, kinetic, elastic, potential, forcing,
/// dissipated_cumulative, h2star_norm_u, l2_norm_v. Every stride-th row plus
/// the last one.
std::string trajectory_csv(const Trajectory& trajectory, std::size_t stride = 1);

/// Long format t, x, u, v over the stored snapshots, including the
/// (zero) boundary nodes.
std::string snapshots_csv(const Trajectory& trajectory, const Grid& grid);

/// x, u_hat with boundary nodes.
std::string stationary_csv(const StationarySolution& solution, const Grid& grid);

struct PlotSeries {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
};

struct PlotSpec {
  std::string title;
  std::string x_label;
  std::string y_label;
  bool log_y{false};
};

/// Static line chart on a fixed 800×500 template.
std::string line_chart_svg(const PlotSpec& spec, const std::vector<PlotSeries>& series);

/// Total energy and cumulative dissipation against time.
std::string energy_svg(const Trajectory& trajectory);

/// ‖u − û‖_{H²*} and ‖u'‖_{L²} against time, log scale.
std::string gap_svg(const ConvergenceReport& report);

}  // namespace beam
