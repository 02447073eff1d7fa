// Acceptance gate: every release-blocking behavior of the toolkit, checked
// end to end at its stated tolerance and runtime budget. Prints one line per
// criterion and exits nonzero if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "bireg/report.hpp"
#include "bireg/rng.hpp"
#include "bireg/scenarios.hpp"
#include "bireg/tensor_norms.hpp"

using namespace bireg;

namespace {

char msg_buf[512];

std::string fmt(const char* pattern, double a, double b = 0.0, double c = 0.0) {
  std::snprintf(msg_buf, sizeof(msg_buf), pattern, a, b, c);
  return msg_buf;
}

std::string check_indicator(const LimitGrid& grid, bool transposed) {
  for (int i = 0; i < grid.n; ++i)
    for (int j = 0; j < grid.n; ++j) {
      const bool on = transposed ? (i <= j) : (j <= i);
      const double dev = std::abs(grid.at(i, j) - Complex(on ? 1.0 : 0.0, 0.0));
      if (dev > 1e-12)
        return "grid cell deviates from the 0/1 staircase by " +
               fmt("%.3g", dev);
    }
  return "";
}

std::string check_split_limits(const GridScenarioResult& r, double row_want,
                               double col_want) {
  if (!r.grid.row_then_col.has_value())
    return "rows-outer limit failed to stabilize";
  if (!r.grid.col_then_row.has_value())
    return "cols-outer limit failed to stabilize";
  const double row_err = std::abs(*r.grid.row_then_col - Complex(row_want, 0.0));
  const double col_err = std::abs(*r.grid.col_then_row - Complex(col_want, 0.0));
  if (row_err > 1e-12) return "rows-outer limit off by " + fmt("%.3g", row_err);
  if (col_err > 1e-12) return "cols-outer limit off by " + fmt("%.3g", col_err);
  if (r.verdict.status != VerdictStatus::Violation)
    return std::string("expected VIOLATION, got ") + to_string(r.verdict.status);
  const double disc_err = std::abs(*r.verdict.discrepancy - 1.0);
  if (disc_err > 1e-9)
    return "discrepancy off 1.0 by " + fmt("%.3g", disc_err);
  if (r.bound_excess > 1e-10)
    return "unit-ball certificate excess " + fmt("%.3g", r.bound_excess);
  return "";
}

// Criterion 1: composition product against the triangular form at N = 64
// yields the exact lower-triangular staircase, iterated limits 0 and 1, and
// a violation of size exactly 1.
std::string staircase_composition() {
  GridScenarioResult r = run_triangular_scenario(64, 8, 1e-9, 1e-6);
  std::string err = check_indicator(r.grid, false);
  if (!err.empty()) return err;
  return check_split_limits(r, 0.0, 1.0);
}

// Criterion 2: superoperator/point-evaluation scenario at N = 64 yields the
// transposed staircase with limits 1 and 0, and the finite-rank variant
// reproduces the grid byte for byte.
std::string point_evaluation_superops() {
  GridScenarioResult r = run_point_scenario(64, 8, 1e-9, 1e-6, false);
  std::string err = check_indicator(r.grid, true);
  if (!err.empty()) return err;
  err = check_split_limits(r, 1.0, 0.0);
  if (!err.empty()) return err;

  GridScenarioResult c = run_point_scenario(64, 8, 1e-9, 1e-6, true);
  if (c.grid.entries.size() != r.grid.entries.size())
    return "variant grid size mismatch";
  for (std::size_t k = 0; k < r.grid.entries.size(); ++k)
    if (!(c.grid.entries[k] == r.grid.entries[k]))
      return "variant grid differs at flat index " + fmt("%.0f", double(k));
  if (grid_to_csv(c.grid) != grid_to_csv(r.grid))
    return "variant CSV payload differs";
  if (c.verdict.status != r.verdict.status)
    return "variant verdict differs";
  return "";
}

// Criterion 3: the same staircase run with both legs certified in the
// exponent-1 norm: certificates hold and grid/verdict are unchanged.
std::string tagged_leg_certificates() {
  TaggedScenarioResult t =
      run_tagged_scenario(64, SchattenExponent(1.0), SchattenExponent(1.0), 8,
                          1e-9, 1e-6);
  if (t.excess_p > 1e-10)
    return "left-leg certificate excess " + fmt("%.3g", t.excess_p);
  if (t.excess_q > 1e-10)
    return "right-leg certificate excess " + fmt("%.3g", t.excess_q);
  GridScenarioResult base = run_triangular_scenario(64, 8, 1e-9, 1e-6);
  for (std::size_t k = 0; k < base.grid.entries.size(); ++k)
    if (!(t.base.grid.entries[k] == base.grid.entries[k]))
      return "tagged grid differs from the untagged run";
  if (t.base.verdict.status != base.verdict.status)
    return "tagged verdict differs";
  if (std::abs(*t.base.verdict.discrepancy - *base.verdict.discrepancy) != 0.0)
    return "tagged discrepancy differs";
  return "";
}

// Criterion 4: 100 randomized entrywise-product trials at N = 48 produce no
// violation, and the escaping-unit family against 20 random probes stays
// within its tail bound and decays below 1e-3 from column 40 on.
std::string schur_product_suite() {
  SchurSuiteSummary s = schur_suite(48, 100, 2026, 8, 1e-9, 1e-6);
  if (s.violations != 0)
    return fmt("%.0f violations", double(s.violations)) +
           (s.first_violation.empty() ? "" : " [" + s.first_violation + "]");
  if (s.inconclusive != 0)
    return fmt("%.0f trials failed to stabilize", double(s.inconclusive));
  if (s.max_bound_excess > 1e-10)
    return "family certificate excess " + fmt("%.3g", s.max_bound_excess);

  SchurNullMonitor mon = schur_null_monitor(48, 20, 2026);
  if (mon.worst_excess > 1e-12)
    return "measured norm exceeded its tail bound by " +
           fmt("%.3g", mon.worst_excess);
  for (std::size_t idx = 39; idx < mon.max_measured.size(); ++idx)
    if (mon.max_measured[idx] >= 1e-3)
      return fmt("escape norm %.3g at column %.0f not below 1e-3",
                 mon.max_measured[idx], double(idx + 1));
  return "";
}

// Criterion 5: 200 randomized norm-convergent trials at dimension 4: every
// trial stabilizes to equal limits matching the form at the limit points.
std::string finite_dim_convergence() {
  FiniteDimSummary s = finite_dim_suite(4, 200, 2026, 48, 8, 1e-9, 1e-6);
  if (s.violations != 0)
    return fmt("%.0f violations", double(s.violations)) +
           (s.first_failure.empty() ? "" : " [" + s.first_failure + "]");
  if (s.inconclusive != 0)
    return fmt("%.0f trials failed to stabilize", double(s.inconclusive));
  if (s.max_limit_error > 1e-8)
    return "limit mismatch " + fmt("%.3g", s.max_limit_error);
  return "";
}

// Criterion 6: norm monotonicity across exponents on 500 random matrices up
// to dimension 16, the rank-one composition rule, and the Frobenius oracle.
std::string schatten_norm_properties() {
  Rng rng(515151);
  const SchattenExponent exps[] = {SchattenExponent(1.0), SchattenExponent(1.5),
                                   SchattenExponent(2.0), SchattenExponent(3.0),
                                   SchattenExponent::infinity()};
  for (int rep = 0; rep < 500; ++rep) {
    const int rows = rng.uniform_int(1, 16);
    const int cols = rng.uniform_int(1, 16);
    ComplexMatrix a = ComplexMatrix::build(
        rows, cols, [&](int, int) { return rng.normal_complex(); });
    double prev = schatten_norm(a, exps[0]);
    for (int k = 1; k < 5; ++k) {
      const double cur = schatten_norm(a, exps[k]);
      if (cur > prev + 1e-10)
        return fmt("norm monotonicity violated by %.3g (rep %.0f)", cur - prev,
                   double(rep));
      prev = cur;
    }
  }

  for (int rep = 0; rep < 100; ++rep) {
    const int m = rng.uniform_int(1, 16);
    const int n = rng.uniform_int(1, 16);
    const int l = rng.uniform_int(1, 16);
    auto vec = [&](int d) {
      std::vector<Complex> e(static_cast<std::size_t>(d));
      for (Complex& z : e) z = rng.normal_complex();
      return ComplexVector(std::move(e));
    };
    const ComplexVector xi = vec(m), eta = vec(n), zeta = vec(n), delta = vec(l);
    const ComplexMatrix lhs = matmul(rank_one(xi, eta), rank_one(zeta, delta));
    const ComplexMatrix rhs = inner(zeta, eta) * rank_one(xi, delta);
    const double dev = max_abs_entry(lhs - rhs);
    if (dev > 1e-12)
      return fmt("rank-one composition rule off by %.3g", dev);
  }

  for (int rep = 0; rep < 100; ++rep) {
    const int d = rng.uniform_int(1, 16);
    ComplexMatrix a = ComplexMatrix::build(
        d, d, [&](int, int) { return rng.normal_complex(); });
    double sq = 0.0;
    for (const Complex& z : a.entries()) sq += std::norm(z);
    const double oracle = std::sqrt(sq);
    if (std::abs(schatten_norm(a, SchattenExponent(2.0)) - oracle) > 1e-10)
      return "exponent-2 norm disagrees with the entrywise oracle";
    if (std::abs(frobenius_norm(a) - oracle) > 1e-10)
      return "frobenius_norm disagrees with the entrywise oracle";
  }
  return "";
}

// Criterion 7: on 50 random 6x6 Hilbert-leg grids the two estimators
// sandwich the exact trace-norm oracle (upper within 1%), and both bracket
// the cross norm of elementary tensors within 1e-6.
std::string projective_norm_sandwich() {
  Rng rng(616161);
  for (int rep = 0; rep < 50; ++rep) {
    ComplexMatrix c = ComplexMatrix::build(
        6, 6, [&](int, int) { return rng.normal_complex(); });
    TensorElement u(std::move(c), SchattenExponent(2.0), SchattenExponent(2.0));
    const double oracle = nuclear_oracle(u);
    const ProjectiveNormEstimate est =
        estimate_projective_norm(u, 6, 400, 6, 1000 + rep);
    if (est.lower > oracle + 1e-8)
      return fmt("lower bound %.12g above oracle %.12g", est.lower, oracle);
    if (oracle > est.upper + 1e-8)
      return fmt("upper bound %.12g below oracle %.12g", est.upper, oracle);
    if (est.lower > est.upper + 1e-8)
      return "certified sides crossed";
    if (est.upper > oracle * 1.01)
      return fmt("upper bound %.12g not within 1%% of oracle %.12g", est.upper,
                 oracle);
  }

  for (int rep = 0; rep < 10; ++rep) {
    std::vector<Complex> xe(6), ye(6);
    for (Complex& z : xe) z = rng.normal_complex();
    for (Complex& z : ye) z = rng.normal_complex();
    const ComplexVector x(std::move(xe)), y(std::move(ye));
    TensorElement u =
        rank_one_tensor(x, y, SchattenExponent(2.0), SchattenExponent(2.0));
    const double cross = norm(x) * norm(y);
    const ProjectiveNormEstimate up = projective_upper(u, 1, 60, 7000 + rep);
    const ProjectiveNormEstimate lo = projective_lower(u, 5, 7000 + rep);
    if (std::abs(up.upper - cross) > 1e-6)
      return fmt("cross-norm upper off by %.3g", std::abs(up.upper - cross));
    if (std::abs(lo.lower - cross) > 1e-6)
      return fmt("cross-norm lower off by %.3g", std::abs(lo.lower - cross));
  }
  return "";
}

struct Criterion {
  const char* name;
  double budget_seconds;  // 0 = no budget
  std::function<std::string()> body;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {"staircase-composition-grid", 1.0, staircase_composition},
      {"point-evaluation-superop-grid", 2.0, point_evaluation_superops},
      {"tagged-leg-certificates", 2.0, tagged_leg_certificates},
      {"schur-product-suite", 30.0, schur_product_suite},
      {"finite-dim-convergence", 20.0, finite_dim_convergence},
      {"schatten-norm-properties", 0.0, schatten_norm_properties},
      {"projective-norm-sandwich", 60.0, projective_norm_sandwich},
  };

  int failures = 0;
  for (const Criterion& crit : criteria) {
    const auto start = std::chrono::steady_clock::now();
    std::string err;
    try {
      err = crit.body();
    } catch (const std::exception& e) {
      err = std::string("exception: ") + e.what();
    }
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    if (err.empty() && crit.budget_seconds > 0.0 &&
        elapsed > crit.budget_seconds)
      err = fmt("runtime %.2fs exceeded budget %.0fs", elapsed,
                crit.budget_seconds);
    if (err.empty()) {
      if (crit.budget_seconds > 0.0)
        std::printf("PASS  %-32s %6.2fs (budget %.0fs)\n", crit.name, elapsed,
                    crit.budget_seconds);
      else
        std::printf("PASS  %-32s %6.2fs\n", crit.name, elapsed);
    } else {
      ++failures;
      std::printf("FAIL  %-32s %6.2fs  %s\n", crit.name, elapsed, err.c_str());
    }
  }
  std::printf("acceptance: %d/%d criteria passed\n",
              static_cast<int>(criteria.size()) - failures,
              static_cast<int>(criteria.size()));
  return failures == 0 ? 0 : 1;
}
