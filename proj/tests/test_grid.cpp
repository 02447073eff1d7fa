#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <vector>

#include "bireg/forms.hpp"
#include "bireg/grid.hpp"
#include "bireg/rng.hpp"

using namespace bireg;

namespace {

// A grid filled from an explicit formula, bypassing build_grid, for testing
// the limit detector in isolation.
LimitGrid synthetic_grid(int n, Complex (*f)(int, int)) {
  LimitGrid grid;
  grid.n = n;
  grid.scenario_id = "synthetic";
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) grid.entries.push_back(f(i, j));
  return grid;
}

MatrixFamily constant_family(const ComplexMatrix& x, int count, double bound) {
  return MatrixFamily::generate("constant", bound, count,
                                [&](int) { return x; });
}

}  // namespace

TEST_CASE("matrix family bookkeeping") {
  auto fam = MatrixFamily::generate("units", 1.0, 5, [](int i) {
    return ComplexMatrix::unit(i, 0, 5, 5);
  });
  CHECK(fam.size() == 5);
  CHECK(fam.bound() == 1.0);
  CHECK(fam.element(2)(2, 0) == Complex(1.0, 0.0));
  CHECK_THROWS_AS(fam.element(5), InvalidInput);
  CHECK(family_bound_excess(fam) == 0.0);

  // Understated bound: excess is the exact overshoot.
  MatrixFamily tight("tight", 0.25,
                     {Complex(2.0, 0.0) * ComplexMatrix::unit(0, 0, 3, 3)});
  CHECK(family_bound_excess(tight) == doctest::Approx(1.75).epsilon(1e-12));

  // Schatten-1 norm of a rank-two partial isometry is 2.
  ComplexMatrix two_units =
      ComplexMatrix::unit(0, 0, 3, 3) + ComplexMatrix::unit(1, 1, 3, 3);
  MatrixFamily tagged("tagged", 1.0, {two_units});
  CHECK(family_bound_excess(tagged, 1.0) == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(family_bound_excess(tagged, 2.0) ==
        doctest::Approx(std::sqrt(2.0) - 1.0).epsilon(1e-10));

  std::vector<ComplexMatrix> mixed = {ComplexMatrix::identity(2),
                                      ComplexMatrix::identity(3)};
  CHECK_THROWS_AS(MatrixFamily("bad", 1.0, std::move(mixed)), InvalidInput);
}

TEST_CASE("superoperator family bound check") {
  std::vector<Superoperator> ok = {identity_superop(4), zero_superop(4)};
  SuperopFamily fam("ok", 1.0, std::move(ok));
  CHECK(superop_family_bound_excess(fam, 3, 11) <= 1e-12);

  // Identity declared with half its real bound: measured ratio 1 exposes it.
  std::vector<Superoperator> lying = {identity_superop(4)};
  SuperopFamily bad("bad", 0.5, std::move(lying));
  CHECK(superop_family_bound_excess(bad, 3, 11) == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("constant families give a constant grid and matching limits") {
  const int n = 20;
  auto e11 = ComplexMatrix::unit(0, 0, n, n);
  const BilinearForm m = riesz_form(conjugation_map(n));
  MatrixFamily fam = constant_family(e11, n, 1.0);

  LimitGrid grid =
      build_grid(m, fam, fam, fam, fam, n, MatrixProduct::Composition);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      CHECK(std::abs(grid.at(i, j) - Complex(1.0, 0.0)) == 0.0);

  grid = iterated_limits(std::move(grid), 5, 1e-9);
  REQUIRE(grid.row_then_col.has_value());
  REQUIRE(grid.col_then_row.has_value());
  CHECK(std::abs(*grid.row_then_col - Complex(1.0, 0.0)) <= 1e-15);
  CHECK(std::abs(*grid.col_then_row - Complex(1.0, 0.0)) <= 1e-15);

  const BiregularityVerdict v = verdict(grid, 1e-6);
  CHECK(v.status == VerdictStatus::BiregularEvidence);
  CHECK(v.discrepancy.value() == 0.0);
}

TEST_CASE("constant sequences reproduce the form at the limit points exactly") {
  const int dim = 4;
  Rng rng(311);
  const BilinearForm m = riesz_form(random_riesz_dense(dim, 17));
  std::vector<ComplexMatrix> limits;
  std::vector<MatrixFamily> fams;
  for (int role = 0; role < 4; ++role) {
    ComplexMatrix s = ComplexMatrix::build(
        dim, dim, [&](int, int) { return 0.4 * rng.normal_complex(); });
    limits.push_back(s);
    fams.push_back(constant_family(s, 16, 2.0));
  }
  LimitGrid grid = build_grid(m, fams[0], fams[1], fams[2], fams[3], 16,
                              MatrixProduct::Composition);
  grid = iterated_limits(std::move(grid), 5, 1e-9);
  const Complex expected =
      m(matmul(limits[0], limits[1]), matmul(limits[2], limits[3]));
  REQUIRE(grid.row_then_col.has_value());
  REQUIRE(grid.col_then_row.has_value());
  CHECK(std::abs(*grid.row_then_col - expected) <= 1e-15);
  CHECK(std::abs(*grid.col_then_row - expected) <= 1e-15);
}

TEST_CASE("limit detector on the staircase pattern") {
  // Indicator of {j <= i}: rows eventually 0, columns eventually 1.
  LimitGrid grid = synthetic_grid(16, [](int i, int j) {
    return j <= i ? Complex(1.0, 0.0) : Complex(0.0, 0.0);
  });
  grid = iterated_limits(std::move(grid), 7, 1e-9);
  REQUIRE(grid.row_then_col.has_value());
  REQUIRE(grid.col_then_row.has_value());
  CHECK(std::abs(*grid.row_then_col) <= 1e-15);
  CHECK(std::abs(*grid.col_then_row - Complex(1.0, 0.0)) <= 1e-15);
  const BiregularityVerdict v = verdict(grid, 1e-6);
  CHECK(v.status == VerdictStatus::Violation);
  CHECK(v.discrepancy.value() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("limit detector refuses unstabilized data") {
  // Oscillation in j: no row stabilizes.
  LimitGrid osc_j = synthetic_grid(16, [](int, int j) {
    return Complex(j % 2 == 0 ? 1.0 : -1.0, 0.0);
  });
  osc_j = iterated_limits(std::move(osc_j), 5, 1e-3);
  CHECK(!osc_j.row_then_col.has_value());
  // Columns are constant in i... each column stabilizes to +-1, but the
  // outer pass over those column limits oscillates too.
  CHECK(!osc_j.col_then_row.has_value());
  CHECK(verdict(osc_j, 1e-6).status == VerdictStatus::Inconclusive);
  CHECK(!verdict(osc_j, 1e-6).discrepancy.has_value());

  // Oscillation in i only: rows stabilize individually, outer pass fails;
  // columns never stabilize.
  LimitGrid osc_i = synthetic_grid(16, [](int i, int) {
    return Complex(i % 2 == 0 ? 1.0 : -1.0, 0.0);
  });
  osc_i = iterated_limits(std::move(osc_i), 5, 1e-3);
  CHECK(!osc_i.row_then_col.has_value());
  CHECK(!osc_i.col_then_row.has_value());
}

TEST_CASE("limit detector accepts a genuinely convergent grid") {
  LimitGrid grid = synthetic_grid(32, [](int i, int j) {
    return Complex(std::ldexp(1.0, -i) + std::ldexp(1.0, -j), 0.0);
  });
  grid = iterated_limits(std::move(grid), 8, 1e-3);
  REQUIRE(grid.row_then_col.has_value());
  REQUIRE(grid.col_then_row.has_value());
  CHECK(std::abs(*grid.row_then_col) <= 1e-4);
  CHECK(std::abs(*grid.col_then_row) <= 1e-4);
  CHECK(verdict(grid, 1e-3).status == VerdictStatus::BiregularEvidence);
}

TEST_CASE("limit detector validates its inputs") {
  LimitGrid grid = synthetic_grid(10, [](int, int) { return Complex(1.0, 0.0); });
  CHECK_THROWS_AS(iterated_limits(grid, 5, 1e-9), InvalidInput);   // 2w >= N
  CHECK_THROWS_AS(iterated_limits(grid, 0, 1e-9), InvalidInput);
  CHECK_THROWS_AS(iterated_limits(grid, 3, 0.0), InvalidInput);
  CHECK_THROWS_AS(verdict(grid, 1e-6), InvalidInput);  // limits not computed
  LimitGrid done = iterated_limits(std::move(grid), 3, 1e-9);
  CHECK_THROWS_AS(verdict(done, 0.0), InvalidInput);
}

TEST_CASE("grid evaluation is independent of the thread partition") {
  const int n = 12;
  Rng rng(313);
  const BilinearForm m = riesz_form(random_riesz_dense(4, 5));
  // Families of random 4x4 matrices; entries must match bitwise across
  // thread counts.
  auto gen_family = [&](int salt) {
    Rng fam_rng = Rng::derive(997, static_cast<std::uint64_t>(salt));
    return MatrixFamily::generate("random", 10.0, n, [&](int) {
      return ComplexMatrix::build(
          4, 4, [&](int, int) { return fam_rng.normal_complex(); });
    });
  };
  MatrixFamily a = gen_family(1), at = gen_family(2), b = gen_family(3),
               bt = gen_family(4);
  LimitGrid g1 = build_grid(m, a, at, b, bt, n, MatrixProduct::Composition, 1);
  LimitGrid g3 = build_grid(m, a, at, b, bt, n, MatrixProduct::Composition, 3);
  LimitGrid g8 = build_grid(m, a, at, b, bt, n, MatrixProduct::Schur, 8);
  LimitGrid s1 = build_grid(m, a, at, b, bt, n, MatrixProduct::Schur, 1);
  REQUIRE(g1.entries.size() == g3.entries.size());
  for (std::size_t k = 0; k < g1.entries.size(); ++k) {
    CHECK(g1.entries[k] == g3.entries[k]);
    CHECK(s1.entries[k] == g8.entries[k]);
  }
  // Schur and composition genuinely differ on this data.
  bool any_diff = false;
  for (std::size_t k = 0; k < g1.entries.size(); ++k)
    if (g1.entries[k] != s1.entries[k]) any_diff = true;
  CHECK(any_diff);
}

TEST_CASE("thread count resolution") {
  unsetenv("BIREG_THREADS");
  CHECK(resolve_thread_count(4) == 4);
  CHECK(resolve_thread_count(0) == 1);
  setenv("BIREG_THREADS", "3", 1);
  CHECK(resolve_thread_count(0) == 3);
  CHECK(resolve_thread_count(2) == 2);  // explicit request wins
  setenv("BIREG_THREADS", "garbage", 1);
  CHECK(resolve_thread_count(0) == 1);
  unsetenv("BIREG_THREADS");
}

TEST_CASE("build_grid validates shapes and sizes") {
  const int n = 8;
  const BilinearForm m = riesz_form(conjugation_map(n));
  MatrixFamily good = constant_family(ComplexMatrix::identity(n), n, 3.0);
  MatrixFamily small = constant_family(ComplexMatrix::identity(n), 4, 3.0);
  CHECK_THROWS_AS(
      build_grid(m, good, good, good, small, n, MatrixProduct::Composition),
      InvalidInput);
  CHECK_THROWS_AS(
      build_grid(m, good, good, good, good, 1, MatrixProduct::Composition),
      InvalidInput);
  // Wrong dimension for the form surfaces as a rejected-input error.
  MatrixFamily wrong = constant_family(ComplexMatrix::identity(4), n, 3.0);
  CHECK_THROWS_AS(
      build_grid(m, wrong, wrong, wrong, wrong, n, MatrixProduct::Composition),
      InvalidInput);
}

TEST_CASE("witness labels travel from families to the verdict") {
  const int n = 6;
  const BilinearForm m = riesz_form(conjugation_map(n));
  MatrixFamily a = constant_family(ComplexMatrix::unit(0, 0, n, n), n, 1.0);
  LimitGrid grid = build_grid(m, a, a, a, a, n, MatrixProduct::Schur);
  grid.scenario_id = "witness-test";
  grid = iterated_limits(std::move(grid), 2, 1e-9);
  const BiregularityVerdict v = verdict(grid, 1e-6);
  CHECK(v.scenario_id == "witness-test");
  CHECK(v.witness.form == m.label());
  CHECK(v.witness.family_a == "constant");
}
