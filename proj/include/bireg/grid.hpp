#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bireg/forms.hpp"
#include "bireg/matrix.hpp"
#include "bireg/operators.hpp"

namespace bireg {

/// Algebra product used to combine paired family elements in a grid cell.
enum class MatrixProduct { Composition, Schur };

/// A finite run of a bounded sequence: elements indexed 0..size-1, each
/// certified to lie within `bound` in HS norm.
class MatrixFamily {
 public:
  MatrixFamily(std::string label, double bound,
               std::vector<ComplexMatrix> elements);

  template <typename Gen>
  static MatrixFamily generate(std::string label, double bound, int n,
                               Gen&& gen) {
    std::vector<ComplexMatrix> elements;
    elements.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) elements.push_back(gen(i));
    return MatrixFamily(std::move(label), bound, std::move(elements));
  }

  const ComplexMatrix& element(int i) const;
  int size() const { return static_cast<int>(elements_.size()); }
  double bound() const { return bound_; }
  const std::string& label() const { return label_; }

 private:
  std::string label_;
  double bound_;
  std::vector<ComplexMatrix> elements_;
};

/// Same, for superoperator-valued sequences; the bound is on the induced
/// HS-to-HS operator norm.
class SuperopFamily {
 public:
  SuperopFamily(std::string label, double bound,
                std::vector<Superoperator> elements);

  const Superoperator& element(int i) const;
  int size() const { return static_cast<int>(elements_.size()); }
  double bound() const { return bound_; }
  const std::string& label() const { return label_; }

 private:
  std::string label_;
  double bound_;
  std::vector<Superoperator> elements_;
};

/// Worst violation of the family's certified bound: max(0, ||a_i||_2 - bound)
/// over all elements (HS norm), or over Schatten-p norms for the tagged
/// variant.
double family_bound_excess(const MatrixFamily& fam);
double family_bound_excess(const MatrixFamily& fam, SchattenExponent p);
/// Sampled check for superoperator families: random probe matrices per
/// element, measuring ||T(X)||_2 / ||X||_2 against the certified bound.
double superop_family_bound_excess(const SuperopFamily& fam, int probes,
                                   std::uint64_t seed);

struct GridWitness {
  std::string form;
  std::string family_a;
  std::string family_a_tilde;
  std::string family_b;
  std::string family_b_tilde;
};

/// The N x N array entry[i][j] = m(a_i * a~_j, b_i * b~_j), plus the two
/// iterated-limit estimates once computed. An estimate is present exactly
/// when the corresponding stabilization test passed.
struct LimitGrid {
  int n = 0;
  std::string scenario_id;
  GridWitness witness;
  std::vector<Complex> entries;  // row-major
  bool limits_computed = false;
  int tail_window = 0;
  double eps = 0.0;
  std::optional<Complex> row_then_col;  // outer limit over i, inner over j
  std::optional<Complex> col_then_row;  // outer limit over j, inner over i

  Complex at(int i, int j) const;
};

/// Number of worker threads for grid evaluation: `requested` if positive,
/// else the BIREG_THREADS environment variable, else 1. The result grid is
/// identical for every thread count.
int resolve_thread_count(int requested);

/// Grid over matrix families: cell (i,j) pairs product(a_i, a~_j) with
/// product(b_i, b~_j) under m, where product is composition or the Schur
/// product.
LimitGrid build_grid(const BilinearForm& m, const MatrixFamily& a,
                     const MatrixFamily& a_tilde, const MatrixFamily& b,
                     const MatrixFamily& b_tilde, int n, MatrixProduct product,
                     int threads = 0);

/// Grid over superoperator families in the first slot (composed) and matrix
/// families in the second (matrix product).
LimitGrid build_grid(const SuperopForm& m, const SuperopFamily& a,
                     const SuperopFamily& a_tilde, const MatrixFamily& b,
                     const MatrixFamily& b_tilde, int n, int threads = 0);

/// Tail-window limit detection. Along each line, the inner limit is declared
/// stabilized when the last `tail_window` entries pairwise differ by less
/// than eps, and is estimated by their mean. The outer pass applies the same
/// rule to the line limits of lines 1..N-tail_window only: the trailing
/// lines' own windows overlap the truncation edge, so they are excluded
/// rather than allowed to poison the outer decision. Requires
/// tail_window < N/2.
LimitGrid iterated_limits(LimitGrid grid, int tail_window, double eps);

enum class VerdictStatus { BiregularEvidence, Violation, Inconclusive };

const char* to_string(VerdictStatus status);

struct BiregularityVerdict {
  VerdictStatus status = VerdictStatus::Inconclusive;
  std::optional<double> discrepancy;  // |row_then_col - col_then_row|
  std::string scenario_id;
  GridWitness witness;
};

/// Violation when both iterated limits stabilized and differ by more than
/// tol; biregular evidence when both stabilized within tol; inconclusive
/// otherwise. Requires iterated_limits to have run.
BiregularityVerdict verdict(const LimitGrid& grid, double tol);

}  // namespace bireg
