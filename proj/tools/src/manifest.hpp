#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "beam/scenario_io.hpp"

namespace beam::cli {

struct RunManifest {
  std::string command;
  std::string scenario_path;
  std::string tool_version;
  ScenarioConfig config;
  double wall_time_s{0.0};
  /// File names relative to the output directory.
  std::vector<std::string> outputs;
  /// Command-specific results.
  nlohmann::json results = nlohmann::json::object();
};

std::string tool_version();

nlohmann::json to_json(const RunManifest& manifest);

/// Writes out_dir/manifest.json atomically. Throws std::runtime_error if a
/// listed output is missing.
void write_manifest(const std::filesystem::path& out_dir, const RunManifest& manifest);

}  // namespace beam::cli
