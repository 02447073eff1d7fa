#pragma once

#include <cstdint>
#include <string>

#include "bireg/report.hpp"

namespace bireg {

/// One batch run: which scenario, at what size and tolerances, where the
/// output goes. Defaults reproduce the headline staircase run.
struct RunConfig {
  std::string scenario = "hs-hs";
  int n = 64;           // grid truncation size
  int dim = 4;          // matrix dimension for finite-dim / projnorm
  double p = 2.0;       // left-leg norm exponent
  double q = 2.0;       // right-leg norm exponent
  int tail_window = 8;  // stabilization window (must satisfy 2*window < n)
  double eps = 1e-9;    // stabilization threshold
  double tol = 1e-6;    // verdict tolerance on the discrepancy
  std::uint64_t seed = 2026;
  int trials = 0;       // 0 = scenario default (schur 100, finite-dim 200,
                        // projnorm 8 dual trials)
  std::string output_format = "json";  // "json" or "csv"
  std::string output_path;             // empty = standard output
};

/// Assembled run artifacts: the full JSON document (config echo, version,
/// wall time, result) and the plot-ready CSV payload.
struct RunReport {
  Json document;
  std::string csv;
};

/// Validates the config, dispatches to the engine, and assembles the report.
/// Throws InvalidInput for unusable configs; numerical failures propagate.
/// A VIOLATION verdict is a completed run, not an error.
RunReport run(const RunConfig& config);

/// The payload selected by config.output_format (JSON document or CSV).
std::string render_report(const RunReport& report, const RunConfig& config);

/// Human-readable scenario catalog.
std::string list_scenarios_text();
/// The same catalog as a JSON array.
std::string list_scenarios_json();

}  // namespace bireg
