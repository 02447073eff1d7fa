#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <string>

#include "bireg/runner.hpp"
#include "bireg/version.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Finite-truncation biregularity diagnostics and projective "
               "tensor-norm estimation"};
  app.set_version_flag("--version", std::string(bireg::kVersion));
  app.require_subcommand(1);

  bireg::RunConfig config;
  CLI::App* run_cmd =
      app.add_subcommand("run", "Execute a scenario and emit its report");
  run_cmd->add_option("--scenario", config.scenario, "Scenario id (see `list`)")
      ->capture_default_str();
  run_cmd->add_option("--n", config.n, "Grid truncation size")
      ->capture_default_str();
  run_cmd->add_option("--dim", config.dim,
                      "Matrix dimension (finite-dim, projnorm)")
      ->capture_default_str();
  run_cmd->add_option("--p", config.p, "Left-leg norm exponent")
      ->capture_default_str();
  run_cmd->add_option("--q", config.q, "Right-leg norm exponent")
      ->capture_default_str();
  run_cmd->add_option("--window", config.tail_window, "Stabilization tail window")
      ->capture_default_str();
  run_cmd->add_option("--eps", config.eps, "Stabilization threshold")
      ->capture_default_str();
  run_cmd->add_option("--tol", config.tol, "Verdict tolerance")
      ->capture_default_str();
  run_cmd->add_option("--seed", config.seed, "Random seed")
      ->capture_default_str();
  run_cmd->add_option("--trials", config.trials,
                      "Trial count (0 = scenario default)")
      ->capture_default_str();
  run_cmd->add_option("--format", config.output_format, "json or csv")
      ->capture_default_str();
  run_cmd->add_option("--out", config.output_path,
                      "Output path (default: standard output)");

  bool list_json = false;
  CLI::App* list_cmd = app.add_subcommand("list", "List available scenarios");
  list_cmd->add_flag("--json", list_json, "Machine-readable catalog");

  CLI11_PARSE(app, argc, argv);

  try {
    if (list_cmd->parsed()) {
      std::cout << (list_json ? bireg::list_scenarios_json()
                              : bireg::list_scenarios_text());
      return 0;
    }
    const bireg::RunReport report = bireg::run(config);
    const std::string payload = bireg::render_report(report, config);
    if (config.output_path.empty()) {
      std::cout << payload;
    } else {
      std::ofstream out(config.output_path, std::ios::binary);
      out << payload;
      out.flush();
      if (!out.good()) {
        std::cerr << "error: failed to write " << config.output_path << "\n";
        return 1;
      }
    }
    return 0;
  } catch (const bireg::InvalidInput& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 1;
  } catch (const bireg::NumericalFailure& e) {
    std::cerr << "numerical failure: " << e.what() << " (residual "
              << e.residual() << ")\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
