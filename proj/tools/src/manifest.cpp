#include "manifest.hpp"

#include <stdexcept>

#include "beam/writers.hpp"

namespace beam::cli {

std::string tool_version() { return BEAM_VERSION; }

nlohmann::json to_json(const RunManifest& m) {
  const auto& c = m.config;
  const double h = c.scenario.length() / static_cast<double>(c.discretization.n + 1);
  nlohmann::json j;
  j["command"] = m.command;
  j["scenario_path"] = m.scenario_path;
  j["tool_version"] = m.tool_version;
  j["discretization"] = {{"scheme", to_string(c.discretization.scheme)},
                         {"n", c.discretization.n},
                         {"a", c.scenario.a},
                         {"b", c.scenario.b},
                         {"h", h},
                         {"dt", c.scenario.dt},
                         {"t_end", c.scenario.t_end}};
  j["tolerances"] = {{"newton_tol", c.solver.newton_tol},
                     {"newton_max_iter", c.solver.newton_max_iter},
                     {"stationary_tol", c.solver.stationary_tol},
                     {"stationary_max_iter", c.solver.stationary_max_iter},
                     {"gap_tol", c.verify.gap_tol},
                     {"v_tol", c.verify.v_tol},
                     {"sigma_gap_tol", c.verify.sigma_gap_tol}};
  j["wall_time_s"] = m.wall_time_s;
  j["outputs"] = m.outputs;
  j["results"] = m.results;
  return j;
}

void write_manifest(const std::filesystem::path& out_dir, const RunManifest& manifest) {
  for (const auto& name : manifest.outputs)
    if (!std::filesystem::exists(out_dir / name))
      throw std::runtime_error("manifest lists missing output " + (out_dir / name).string());
  atomic_write(out_dir / "manifest.json", to_json(manifest).dump(2) + "\n");
}

}  // namespace beam::cli
