#include <CLI11.hpp>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include <cstdlib>
#include <iostream>
#include <stdexcept>

#include "commands.hpp"

namespace {

void setup_logging() {
  auto logger = spdlog::stderr_color_mt("beam");
  logger->set_pattern("[%l] %v");
  spdlog::set_default_logger(logger);
  spdlog::set_level(spdlog::level::info);
  if (const char* env = std::getenv("BEAM_LOG")) {
    const std::string level = env;
    if (level == "error")
      spdlog::set_level(spdlog::level::err);
    else if (level == "debug")
      spdlog::set_level(spdlog::level::debug);
    else if (level != "info")
      spdlog::warn("BEAM_LOG={} not recognized, using info", level);
  }
}

}  // namespace

int main(int argc, char** argv) {
  setup_logging();
  using namespace beam::cli;

  CLI::App app{"Damped nonlinear beam: simulation, equilibrium and verification"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(BEAM_VERSION));

  std::string scenario, out_dir;
  std::vector<std::string> params;
  unsigned jobs = 0;

  auto* sim = app.add_subcommand("simulate", "Integrate a scenario in time");
  sim->add_option("scenario", scenario, "Scenario file")->required();
  sim->add_option("-o,--out", out_dir, "Output directory")->required();

  auto* stat = app.add_subcommand("stationary", "Solve for the equilibrium");
  stat->add_option("scenario", scenario, "Scenario file")->required();
  stat->add_option("-o,--out", out_dir, "Output directory")->required();

  auto* ver = app.add_subcommand("verify", "Run every check and print a PASS/FAIL table");
  ver->add_option("scenario", scenario, "Scenario file")->required();

  auto* sweep = app.add_subcommand("sweep", "Parameter study over a Cartesian product");
  sweep->add_option("scenario", scenario, "Scenario file")->required();
  sweep->add_option("--param", params, "section.key=v1,v2,...")->take_all();
  sweep->add_option("-o,--out", out_dir, "Output directory")->required();
  sweep->add_option("--jobs", jobs, "Concurrent runs (default: available parallelism)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kInvalidScenario;
  }

  if (*sim) return cmd_simulate(scenario, out_dir, std::cout, std::cerr);
  if (*stat) return cmd_stationary(scenario, out_dir, std::cout, std::cerr);
  if (*ver) return cmd_verify(scenario, std::cout, std::cerr);

  std::vector<SweepParam> parsed;
  try {
    for (const auto& p : params) parsed.push_back(parse_sweep_param(p));
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInvalidScenario;
  }
  return cmd_sweep(scenario, parsed, out_dir, jobs, std::cout, std::cerr);
}
