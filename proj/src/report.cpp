#include "bireg/report.hpp"

#include <cmath>
#include <cstdio>
#include <limits>

namespace bireg {

std::string format_complex(Complex z) {
  char buf[80];
  std::snprintf(buf, sizeof(buf), "%.17g%+.17gj", z.real(), z.imag());
  return buf;
}

Json complex_to_json(Complex z) { return Json::array({z.real(), z.imag()}); }

namespace {

Json optional_complex(const std::optional<Complex>& z) {
  if (!z.has_value()) return nullptr;
  return complex_to_json(*z);
}

Json finite_or_null(double x) {
  if (!std::isfinite(x)) return nullptr;
  return x;
}

Json witness_to_json(const GridWitness& w) {
  Json j;
  j["form"] = w.form;
  j["family_a"] = w.family_a;
  j["family_a_tilde"] = w.family_a_tilde;
  j["family_b"] = w.family_b;
  j["family_b_tilde"] = w.family_b_tilde;
  return j;
}

}  // namespace

std::string grid_to_csv(const LimitGrid& grid) {
  std::string out;
  out.reserve(static_cast<std::size_t>(grid.n) * static_cast<std::size_t>(grid.n) * 24);
  for (int i = 0; i < grid.n; ++i) {
    for (int j = 0; j < grid.n; ++j) {
      if (j > 0) out += ',';
      out += format_complex(grid.at(i, j));
    }
    out += '\n';
  }
  return out;
}

Json grid_to_json(const LimitGrid& grid) {
  Json j;
  j["scenario"] = grid.scenario_id;
  j["n"] = grid.n;
  j["tail_window"] = grid.tail_window;
  j["eps"] = grid.eps;
  j["witness"] = witness_to_json(grid.witness);
  Json rows = Json::array();
  for (int i = 0; i < grid.n; ++i) {
    Json row = Json::array();
    for (int jj = 0; jj < grid.n; ++jj) row.push_back(complex_to_json(grid.at(i, jj)));
    rows.push_back(std::move(row));
  }
  j["entries"] = std::move(rows);
  j["row_then_col"] = optional_complex(grid.row_then_col);
  j["col_then_row"] = optional_complex(grid.col_then_row);
  j["stabilized"] = Json{{"rows_outer", grid.row_then_col.has_value()},
                         {"cols_outer", grid.col_then_row.has_value()}};
  return j;
}

Json verdict_to_json(const BiregularityVerdict& verdict) {
  Json j;
  j["status"] = to_string(verdict.status);
  j["discrepancy"] =
      verdict.discrepancy.has_value() ? Json(*verdict.discrepancy) : Json(nullptr);
  j["scenario"] = verdict.scenario_id;
  j["witness"] = witness_to_json(verdict.witness);
  return j;
}

Json estimate_to_json(const ProjectiveNormEstimate& estimate) {
  Json j;
  j["upper"] = finite_or_null(estimate.upper);
  j["lower"] = estimate.lower;
  Json pairs = Json::array();
  for (const DecompositionPair& p : estimate.certificate_upper) {
    Json left = Json::array();
    for (const Complex& z : p.left.entries()) left.push_back(format_complex(z));
    Json right = Json::array();
    for (const Complex& z : p.right.entries()) right.push_back(format_complex(z));
    pairs.push_back(Json{{"left", std::move(left)}, {"right", std::move(right)}});
  }
  j["certificate_upper"] = std::move(pairs);
  Json dual = Json::array();
  for (int a = 0; a < estimate.certificate_lower.rows(); ++a) {
    Json row = Json::array();
    for (int b = 0; b < estimate.certificate_lower.cols(); ++b)
      row.push_back(format_complex(estimate.certificate_lower(a, b)));
    dual.push_back(std::move(row));
  }
  j["certificate_lower"] = std::move(dual);
  j["objective_history"] = estimate.objective_history;
  return j;
}

Json schur_suite_to_json(const SchurSuiteSummary& summary) {
  Json j;
  j["trials"] = summary.trials;
  j["violations"] = summary.violations;
  j["biregular"] = summary.biregular;
  j["inconclusive"] = summary.inconclusive;
  j["max_discrepancy"] = summary.max_discrepancy;
  j["max_bound_excess"] = summary.max_bound_excess;
  j["first_violation"] = summary.first_violation;
  return j;
}

Json null_monitor_to_json(const SchurNullMonitor& monitor) {
  Json j;
  j["n"] = monitor.n;
  j["num_probes"] = monitor.num_probes;
  j["max_measured"] = monitor.max_measured;
  j["worst_excess"] = monitor.worst_excess;
  return j;
}

std::string null_monitor_to_csv(const SchurNullMonitor& monitor) {
  std::string out = "i,max_measured\n";
  char buf[64];
  for (std::size_t k = 0; k < monitor.max_measured.size(); ++k) {
    std::snprintf(buf, sizeof(buf), "%zu,%.17g\n", k + 1,
                  monitor.max_measured[k]);
    out += buf;
  }
  return out;
}

Json finite_dim_to_json(const FiniteDimSummary& summary) {
  Json j;
  j["dim"] = summary.dim;
  j["trials"] = summary.trials;
  j["violations"] = summary.violations;
  j["inconclusive"] = summary.inconclusive;
  j["max_limit_error"] = summary.max_limit_error;
  j["first_failure"] = summary.first_failure;
  return j;
}

}  // namespace bireg
