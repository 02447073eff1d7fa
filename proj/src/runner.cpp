#include "bireg/runner.hpp"

#include <chrono>
#include <cstdio>
#include <utility>

#include "bireg/rng.hpp"
#include "bireg/version.hpp"

namespace bireg {

namespace {

bool known_scenario(const std::string& id) {
  for (const ScenarioInfo& info : scenario_catalog())
    if (info.id == id) return true;
  return false;
}

void validate(const RunConfig& c) {
  if (!known_scenario(c.scenario)) {
    std::string ids;
    for (const ScenarioInfo& info : scenario_catalog()) {
      if (!ids.empty()) ids += ", ";
      ids += info.id;
    }
    throw InvalidInput("unknown scenario '" + c.scenario + "' (expected one of " +
                       ids + ")");
  }
  if (c.n < 2) throw InvalidInput("n must be at least 2");
  if (c.dim < 1) throw InvalidInput("dim must be positive");
  if (c.tail_window < 1) throw InvalidInput("window must be positive");
  if (2 * c.tail_window >= c.n)
    throw InvalidInput("window must satisfy 2*window < n");
  if (!(c.eps > 0.0)) throw InvalidInput("eps must be positive");
  if (!(c.tol > 0.0)) throw InvalidInput("tol must be positive");
  if (c.trials < 0) throw InvalidInput("trials must be nonnegative");
  if (c.output_format != "json" && c.output_format != "csv")
    throw InvalidInput("format must be json or csv");
}

Json config_echo(const RunConfig& c, int resolved_trials) {
  Json j;
  j["scenario"] = c.scenario;
  j["n"] = c.n;
  j["dim"] = c.dim;
  j["p"] = c.p;
  j["q"] = c.q;
  j["tail_window"] = c.tail_window;
  j["eps"] = c.eps;
  j["tol"] = c.tol;
  j["seed"] = c.seed;
  j["trials"] = resolved_trials;
  j["format"] = c.output_format;
  j["out"] = c.output_path;
  return j;
}

Json grid_result(const GridScenarioResult& r) {
  Json j;
  j["grid"] = grid_to_json(r.grid);
  j["verdict"] = verdict_to_json(r.verdict);
  j["bound_excess"] = r.bound_excess;
  return j;
}

std::string summary_csv(const FiniteDimSummary& s) {
  char buf[160];
  std::snprintf(buf, sizeof(buf), "dim,trials,violations,inconclusive,max_limit_error\n%d,%d,%d,%d,%.17g\n",
                s.dim, s.trials, s.violations, s.inconclusive,
                s.max_limit_error);
  return buf;
}

std::string history_csv(const ProjectiveNormEstimate& e) {
  std::string out = "iter,objective\n";
  char buf[64];
  for (std::size_t k = 0; k < e.objective_history.size(); ++k) {
    std::snprintf(buf, sizeof(buf), "%zu,%.17g\n", k, e.objective_history[k]);
    out += buf;
  }
  return out;
}

}  // namespace

RunReport run(const RunConfig& config) {
  validate(config);
  const auto start = std::chrono::steady_clock::now();

  Json result;
  std::string csv;
  int resolved_trials = config.trials;

  if (config.scenario == "hs-hs") {
    GridScenarioResult r = run_triangular_scenario(
        config.n, config.tail_window, config.eps, config.tol);
    result = grid_result(r);
    csv = grid_to_csv(r.grid);
  } else if (config.scenario == "bk-k" || config.scenario == "b0k-k") {
    GridScenarioResult r =
        run_point_scenario(config.n, config.tail_window, config.eps, config.tol,
                           config.scenario == "b0k-k");
    result = grid_result(r);
    csv = grid_to_csv(r.grid);
  } else if (config.scenario == "bk-sp") {
    TaggedScenarioResult r = run_tagged_scenario(
        config.n, SchattenExponent(config.p), SchattenExponent(config.q),
        config.tail_window, config.eps, config.tol);
    result = grid_result(r.base);
    result["leg_certificates"] =
        Json{{"p", config.p}, {"q", config.q}, {"excess_p", r.excess_p},
             {"excess_q", r.excess_q}};
    csv = grid_to_csv(r.base.grid);
  } else if (config.scenario == "schur") {
    if (resolved_trials == 0) resolved_trials = 100;
    SchurSuiteSummary suite =
        schur_suite(config.n, resolved_trials, config.seed, config.tail_window,
                    config.eps, config.tol);
    SchurNullMonitor monitor = schur_null_monitor(config.n, 20, config.seed);
    result["suite"] = schur_suite_to_json(suite);
    result["null_monitor"] = null_monitor_to_json(monitor);
    csv = null_monitor_to_csv(monitor);
  } else if (config.scenario == "finite-dim") {
    if (resolved_trials == 0) resolved_trials = 200;
    FiniteDimSummary s =
        finite_dim_suite(config.dim, resolved_trials, config.seed, config.n,
                         config.tail_window, config.eps, config.tol);
    result = finite_dim_to_json(s);
    csv = summary_csv(s);
  } else {  // projnorm
    if (resolved_trials == 0) resolved_trials = 8;
    Rng rng = Rng::derive(config.seed, 0x9f0);
    ComplexMatrix c = ComplexMatrix::build(
        config.dim, config.dim, [&](int, int) { return rng.normal_complex(); });
    TensorElement u(std::move(c), SchattenExponent(config.p),
                    SchattenExponent(config.q));
    ProjectiveNormEstimate est = estimate_projective_norm(
        u, config.dim, 1500, resolved_trials, config.seed);
    result["left_dim"] = config.dim;
    result["right_dim"] = config.dim;
    result["p"] = config.p;
    result["q"] = config.q;
    if (config.p == 2.0 && config.q == 2.0)
      result["nuclear_oracle"] = nuclear_oracle(u);
    else
      result["nuclear_oracle"] = nullptr;
    csv = history_csv(est);
    result["estimate"] = estimate_to_json(est);
  }

  const double elapsed =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();

  RunReport report;
  report.document["tool"] = "bireg";
  report.document["version"] = kVersion;
  report.document["config"] = config_echo(config, resolved_trials);
  report.document["wall_time_seconds"] = elapsed;
  report.document["result"] = std::move(result);
  report.csv = std::move(csv);
  return report;
}

std::string render_report(const RunReport& report, const RunConfig& config) {
  if (config.output_format == "csv") return report.csv;
  return report.document.dump(2) + "\n";
}

std::string list_scenarios_text() {
  std::string out;
  for (const ScenarioInfo& info : scenario_catalog()) {
    out += info.id + " — " + info.title + "\n";
    out += "  " + info.claim + "\n";
    out += "  defaults: " + info.defaults + "\n";
  }
  return out;
}

std::string list_scenarios_json() {
  Json arr = Json::array();
  for (const ScenarioInfo& info : scenario_catalog()) {
    Json j;
    j["id"] = info.id;
    j["title"] = info.title;
    j["claim"] = info.claim;
    j["defaults"] = info.defaults;
    arr.push_back(std::move(j));
  }
  return arr.dump(2) + "\n";
}

}  // namespace bireg
