#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "bireg/grid.hpp"

namespace bireg {

struct ScenarioInfo {
  std::string id;
  std::string title;
  std::string claim;     // what the run demonstrates, in plain terms
  std::string defaults;  // default parameters as shown by the catalog
};

/// The seven runnable scenarios, in catalog order.
const std::vector<ScenarioInfo>& scenario_catalog();

struct GridScenarioResult {
  LimitGrid grid;
  BiregularityVerdict verdict;
  double bound_excess = 0.0;  // worst unit-ball certificate violation
};

/// Composition product on N x N matrices with the lower-triangular
/// conjugation form. Families are matrix units: a_i = E_{i,1}, a~_j = E_{1,j}
/// and the same pair again on the second slot, so cell (i,j) pairs E_{i,j}
/// with E_{i,j} and equals 1 exactly when j <= i. Iterated limits: 0
/// (rows outer) and 1 (columns outer).
GridScenarioResult run_triangular_scenario(int n, int window, double eps,
                                           double tol, int threads = 0);

/// Superoperator leg against a matrix leg under point evaluation at the
/// corner unit E_{1,1}. First-slot families: A -> theta_{S_i(A e_1), e_1}
/// with S_i = theta_{e_1, e_i}, and A -> theta_{R_j(A e_1), e_1} with R_j
/// the projection onto the first j coordinates. Second slot: E_{i,1} and the
/// constant E_{1,1}. Cell (i,j) equals 1 exactly when i <= j. The
/// compact_variant flag relabels the run for the finite-rank reading of the
/// same truncated sequences; the grid is identical by construction.
GridScenarioResult run_point_scenario(int n, int window, double eps, double tol,
                                      bool compact_variant, int threads = 0);

struct TaggedScenarioResult {
  GridScenarioResult base;
  double excess_p = 0.0;  // first-leg certificate excess in the p-norm
  double excess_q = 0.0;  // second-leg certificate excess in the q-norm
};

/// The triangular scenario with its legs re-certified in Schatten p and q
/// norms (p, q <= 2). Matrix units have every Schatten norm equal to 1, so
/// the unit-ball certificates transfer and the grid is unchanged.
TaggedScenarioResult run_tagged_scenario(int n, SchattenExponent p,
                                         SchattenExponent q, int window,
                                         double eps, double tol,
                                         int threads = 0);

/// One randomized Schur-product trial: four weakly-convergent unit-ball
/// families (a fixed decaying profile plus escaping sparse perturbations)
/// against a random conjugate-linear-map form, entrywise product in both
/// slots.
GridScenarioResult run_schur_scenario(int n, std::uint64_t seed, int window,
                                      double eps, double tol, int threads = 0);

struct SchurSuiteSummary {
  int trials = 0;
  int violations = 0;
  int biregular = 0;
  int inconclusive = 0;
  double max_discrepancy = 0.0;
  double max_bound_excess = 0.0;
  std::string first_violation;  // witness description, empty when none
};

/// Seeded batch of run_schur_scenario trials.
SchurSuiteSummary schur_suite(int n, int trials, std::uint64_t seed, int window,
                              double eps, double tol, int threads = 0);

struct SchurNullMonitor {
  int n = 0;
  int num_probes = 0;
  // max over probes of the measured norm ||E_{1,i} * U||_2, indexed by i-1.
  std::vector<double> max_measured;
  // worst value of measured^2 minus its tail bound over all (i, probe);
  // nonpositive means every measurement was certified by the bound.
  double worst_excess = 0.0;
};

/// Tracks the coordinate-escape family V^(i) = E_{1,i} against `num_probes`
/// random decaying matrices U: the entrywise product's norm must fall within
/// the tail bound and vanish as the support escapes.
SchurNullMonitor schur_null_monitor(int n, int num_probes, std::uint64_t seed);

struct FiniteDimSummary {
  int dim = 0;
  int trials = 0;
  int violations = 0;
  int inconclusive = 0;
  // max over trials and both limit orders of |estimate - m(limit products)|.
  double max_limit_error = 0.0;
  std::string first_failure;  // witness description, empty when none
};

/// Randomized convergent families at small dimension under composition:
/// elements S + 2^{-(i+1)} P_i converge to S in norm, so both iterated
/// limits must exist and equal the form applied to the limit products.
FiniteDimSummary finite_dim_suite(int dim, int trials, std::uint64_t seed,
                                  int n, int window, double eps, double tol,
                                  int threads = 0);

/// The spelled-out slower-decay example: one family run with perturbations
/// shrinking like 1/i, checked at a looser stabilization threshold.
FiniteDimSummary finite_dim_harmonic_example(int dim, std::uint64_t seed, int n,
                                             int window, double eps, double tol,
                                             int threads = 0);

}  // namespace bireg
