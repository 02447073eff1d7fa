#include "bireg/grid.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <thread>

#include "bireg/rng.hpp"

namespace bireg {

namespace {

void require_uniform_shape(const std::vector<ComplexMatrix>& elements,
                           const char* what) {
  if (elements.empty())
    throw InvalidInput(std::string(what) + ": family must be nonempty");
  for (const ComplexMatrix& e : elements) {
    if (!e.same_shape(elements.front()))
      throw InvalidInput(std::string(what) + ": elements differ in shape");
  }
}

// Evaluate rows [0, n) of the grid with `threads` workers; cell evaluation
// is pure, each worker writes disjoint slots, so the result is independent
// of the partition.
template <typename CellFn>
void fill_grid(std::vector<Complex>& entries, int n, int threads,
               const CellFn& cell) {
  threads = std::clamp(threads, 1, n);
  if (threads == 1) {
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        entries[static_cast<std::size_t>(i) * static_cast<std::size_t>(n) +
                static_cast<std::size_t>(j)] = cell(i, j);
    return;
  }
  std::vector<std::thread> workers;
  std::vector<std::exception_ptr> failures(static_cast<std::size_t>(threads));
  for (int t = 0; t < threads; ++t) {
    workers.emplace_back([&, t]() {
      try {
        for (int i = t; i < n; i += threads)
          for (int j = 0; j < n; ++j)
            entries[static_cast<std::size_t>(i) * static_cast<std::size_t>(n) +
                    static_cast<std::size_t>(j)] = cell(i, j);
      } catch (...) {
        failures[static_cast<std::size_t>(t)] = std::current_exception();
      }
    });
  }
  for (std::thread& w : workers) w.join();
  for (const std::exception_ptr& p : failures)
    if (p) std::rethrow_exception(p);
}

// Stabilization of one line: the last `window` values must pairwise differ
// by less than eps; the estimate is their mean.
std::optional<Complex> window_limit(const std::vector<Complex>& line,
                                    int window, double eps) {
  const int n = static_cast<int>(line.size());
  Complex sum(0.0, 0.0);
  for (int k = n - window; k < n; ++k) {
    for (int l = k + 1; l < n; ++l)
      if (std::abs(line[static_cast<std::size_t>(k)] -
                   line[static_cast<std::size_t>(l)]) >= eps)
        return std::nullopt;
    sum += line[static_cast<std::size_t>(k)];
  }
  return sum / Complex(static_cast<double>(window), 0.0);
}

// One iterated limit: inner pass along each considered line, outer
// tail-window rule over the line limits. Lines within `window` of the
// truncation edge are skipped in the outer pass; their inner windows
// straddle entries the truncation has already distorted.
std::optional<Complex> iterated_pass(const LimitGrid& grid, int window,
                                     double eps, bool rows_inner_over_j) {
  const int considered = grid.n - window;
  std::vector<std::optional<Complex>> line_limits;
  line_limits.reserve(static_cast<std::size_t>(considered));
  std::vector<Complex> line(static_cast<std::size_t>(grid.n));
  for (int i = 0; i < considered; ++i) {
    for (int j = 0; j < grid.n; ++j)
      line[static_cast<std::size_t>(j)] =
          rows_inner_over_j ? grid.at(i, j) : grid.at(j, i);
    line_limits.push_back(window_limit(line, window, eps));
  }
  std::vector<Complex> outer_window;
  for (int k = considered - window; k < considered; ++k) {
    const auto& lim = line_limits[static_cast<std::size_t>(k)];
    if (!lim.has_value()) return std::nullopt;
    outer_window.push_back(*lim);
  }
  return window_limit(outer_window, window, eps);
}

}  // namespace

MatrixFamily::MatrixFamily(std::string label, double bound,
                           std::vector<ComplexMatrix> elements)
    : label_(std::move(label)), bound_(bound), elements_(std::move(elements)) {
  if (!(bound_ >= 0.0))
    throw InvalidInput("MatrixFamily: bound must be nonnegative");
  require_uniform_shape(elements_, "MatrixFamily");
}

const ComplexMatrix& MatrixFamily::element(int i) const {
  if (i < 0 || i >= size())
    throw InvalidInput("MatrixFamily: index out of range");
  return elements_[static_cast<std::size_t>(i)];
}

SuperopFamily::SuperopFamily(std::string label, double bound,
                             std::vector<Superoperator> elements)
    : label_(std::move(label)), bound_(bound), elements_(std::move(elements)) {
  if (!(bound_ >= 0.0))
    throw InvalidInput("SuperopFamily: bound must be nonnegative");
  if (elements_.empty())
    throw InvalidInput("SuperopFamily: family must be nonempty");
  for (const Superoperator& t : elements_)
    if (t.dim() != elements_.front().dim())
      throw InvalidInput("SuperopFamily: elements differ in dimension");
}

const Superoperator& SuperopFamily::element(int i) const {
  if (i < 0 || i >= size())
    throw InvalidInput("SuperopFamily: index out of range");
  return elements_[static_cast<std::size_t>(i)];
}

double family_bound_excess(const MatrixFamily& fam) {
  double worst = 0.0;
  for (int i = 0; i < fam.size(); ++i)
    worst = std::max(worst, frobenius_norm(fam.element(i)) - fam.bound());
  return std::max(worst, 0.0);
}

double family_bound_excess(const MatrixFamily& fam, SchattenExponent p) {
  double worst = 0.0;
  for (int i = 0; i < fam.size(); ++i)
    worst = std::max(worst, schatten_norm(fam.element(i), p) - fam.bound());
  return std::max(worst, 0.0);
}

double superop_family_bound_excess(const SuperopFamily& fam, int probes,
                                   std::uint64_t seed) {
  if (probes <= 0) throw InvalidInput("superop_family_bound_excess: probes >= 1");
  const int dim = fam.element(0).dim();
  double worst = 0.0;
  for (int i = 0; i < fam.size(); ++i) {
    for (int k = 0; k < probes; ++k) {
      Rng rng = Rng::derive(seed, static_cast<std::uint64_t>(i),
                            static_cast<std::uint64_t>(k));
      ComplexMatrix x = ComplexMatrix::build(
          dim, dim, [&](int, int) { return rng.normal_complex(); });
      const double nx = frobenius_norm(x);
      if (nx == 0.0) continue;
      const double ratio = frobenius_norm(fam.element(i).apply(x)) / nx;
      worst = std::max(worst, ratio - fam.bound());
    }
  }
  return std::max(worst, 0.0);
}

Complex LimitGrid::at(int i, int j) const {
  if (i < 0 || i >= n || j < 0 || j >= n)
    throw InvalidInput("LimitGrid: index out of range");
  return entries[static_cast<std::size_t>(i) * static_cast<std::size_t>(n) +
                 static_cast<std::size_t>(j)];
}

int resolve_thread_count(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("BIREG_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v >= 1 && v <= 1024)
      return static_cast<int>(v);
  }
  return 1;
}

namespace {

LimitGrid make_grid_shell(int n, const std::string& form_label,
                          const MatrixFamily& a, const MatrixFamily& a_tilde,
                          const MatrixFamily& b, const MatrixFamily& b_tilde) {
  if (n < 2) throw InvalidInput("build_grid: need N >= 2");
  for (const MatrixFamily* fam : {&a, &a_tilde, &b, &b_tilde})
    if (fam->size() < n)
      throw InvalidInput("build_grid: family shorter than the grid size");
  LimitGrid grid;
  grid.n = n;
  grid.witness = GridWitness{form_label, a.label(), a_tilde.label(), b.label(),
                             b_tilde.label()};
  grid.entries.assign(static_cast<std::size_t>(n) * static_cast<std::size_t>(n),
                      Complex(0.0, 0.0));
  return grid;
}

}  // namespace

LimitGrid build_grid(const BilinearForm& m, const MatrixFamily& a,
                     const MatrixFamily& a_tilde, const MatrixFamily& b,
                     const MatrixFamily& b_tilde, int n, MatrixProduct product,
                     int threads) {
  LimitGrid grid = make_grid_shell(n, m.label(), a, a_tilde, b, b_tilde);
  auto combine = [product](const ComplexMatrix& x, const ComplexMatrix& y) {
    return product == MatrixProduct::Composition ? matmul(x, y) : schur(x, y);
  };
  auto cell = [&](int i, int j) {
    return m(combine(a.element(i), a_tilde.element(j)),
             combine(b.element(i), b_tilde.element(j)));
  };
  fill_grid(grid.entries, n, resolve_thread_count(threads), cell);
  return grid;
}

LimitGrid build_grid(const SuperopForm& m, const SuperopFamily& a,
                     const SuperopFamily& a_tilde, const MatrixFamily& b,
                     const MatrixFamily& b_tilde, int n, int threads) {
  if (n < 2) throw InvalidInput("build_grid: need N >= 2");
  if (a.size() < n || a_tilde.size() < n || b.size() < n || b_tilde.size() < n)
    throw InvalidInput("build_grid: family shorter than the grid size");
  LimitGrid grid;
  grid.n = n;
  grid.witness = GridWitness{m.label(), a.label(), a_tilde.label(), b.label(),
                             b_tilde.label()};
  grid.entries.assign(static_cast<std::size_t>(n) * static_cast<std::size_t>(n),
                      Complex(0.0, 0.0));
  auto cell = [&](int i, int j) {
    return m(compose_superops(a.element(i), a_tilde.element(j)),
             matmul(b.element(i), b_tilde.element(j)));
  };
  fill_grid(grid.entries, n, resolve_thread_count(threads), cell);
  return grid;
}

LimitGrid iterated_limits(LimitGrid grid, int tail_window, double eps) {
  if (tail_window < 1) throw InvalidInput("iterated_limits: window >= 1");
  if (2 * tail_window >= grid.n)
    throw InvalidInput("iterated_limits: need tail_window < N/2");
  if (!(eps > 0.0)) throw InvalidInput("iterated_limits: eps must be positive");
  grid.tail_window = tail_window;
  grid.eps = eps;
  grid.row_then_col = iterated_pass(grid, tail_window, eps, true);
  grid.col_then_row = iterated_pass(grid, tail_window, eps, false);
  grid.limits_computed = true;
  return grid;
}

const char* to_string(VerdictStatus status) {
  switch (status) {
    case VerdictStatus::BiregularEvidence: return "BIREGULAR_EVIDENCE";
    case VerdictStatus::Violation: return "VIOLATION";
    case VerdictStatus::Inconclusive: return "INCONCLUSIVE";
  }
  return "UNKNOWN";
}

BiregularityVerdict verdict(const LimitGrid& grid, double tol) {
  if (!grid.limits_computed)
    throw InvalidInput("verdict: run iterated_limits first");
  if (!(tol > 0.0)) throw InvalidInput("verdict: tol must be positive");
  BiregularityVerdict v;
  v.scenario_id = grid.scenario_id;
  v.witness = grid.witness;
  if (grid.row_then_col.has_value() && grid.col_then_row.has_value()) {
    const double disc = std::abs(*grid.row_then_col - *grid.col_then_row);
    v.discrepancy = disc;
    v.status = disc > tol ? VerdictStatus::Violation
                          : VerdictStatus::BiregularEvidence;
  } else {
    v.status = VerdictStatus::Inconclusive;
  }
  return v;
}

}  // namespace bireg
