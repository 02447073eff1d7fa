#include <doctest.h>

#include <cmath>
#include <vector>

#include "bireg/rng.hpp"
#include "bireg/tensor_norms.hpp"

using namespace bireg;

namespace {

const SchattenExponent kTwo(2.0);
const SchattenExponent kOne(1.0);

ComplexVector random_vector(int dim, Rng& rng) {
  std::vector<Complex> e(static_cast<std::size_t>(dim));
  for (Complex& z : e) z = rng.normal_complex();
  return ComplexVector(std::move(e));
}

ComplexMatrix random_grid(int rows, int cols, Rng& rng) {
  return ComplexMatrix::build(rows, cols,
                              [&](int, int) { return rng.normal_complex(); });
}

// Independent reconstruction of a decomposition certificate.
ComplexMatrix rebuild(const std::vector<DecompositionPair>& pairs, int rows,
                      int cols) {
  ComplexMatrix sum(rows, cols);
  for (const DecompositionPair& pr : pairs) {
    REQUIRE(pr.left.dim() == rows);
    REQUIRE(pr.right.dim() == cols);
    sum = sum + ComplexMatrix::build(
                    rows, cols, [&](int a, int b) { return pr.left[a] * pr.right[b]; });
  }
  return sum;
}

double certificate_objective(const std::vector<DecompositionPair>& pairs,
                             SchattenExponent p, SchattenExponent q) {
  double sum = 0.0;
  for (const DecompositionPair& pr : pairs)
    sum += lp_norm(pr.left, p) * lp_norm(pr.right, q);
  return sum;
}

}  // namespace

TEST_CASE("coordinate p-norms and duality bookkeeping") {
  ComplexVector v(std::vector<Complex>{Complex(3.0, 0.0), Complex(0.0, 4.0)});
  CHECK(lp_norm(v, kTwo) == doctest::Approx(5.0).epsilon(1e-14));
  CHECK(lp_norm(v, kOne) == doctest::Approx(7.0).epsilon(1e-14));
  CHECK(lp_norm(v, SchattenExponent::infinity()) ==
        doctest::Approx(4.0).epsilon(1e-14));
  // Monotone in the exponent, homogeneous of degree 1.
  CHECK(lp_norm(v, SchattenExponent(1.5)) >= lp_norm(v, kTwo));
  CHECK(lp_norm(v, SchattenExponent(1.5)) <= lp_norm(v, kOne));
  CHECK(lp_norm(Complex(2.0, 0.0) * v, SchattenExponent(1.5)) ==
        doctest::Approx(2.0 * lp_norm(v, SchattenExponent(1.5))).epsilon(1e-14));

  CHECK(dual_exponent(kOne).is_infinite());
  CHECK(dual_exponent(SchattenExponent::infinity()).value() == 1.0);
  CHECK(dual_exponent(kTwo).value() == doctest::Approx(2.0));
  CHECK(dual_exponent(SchattenExponent(1.5)).value() ==
        doctest::Approx(3.0).epsilon(1e-12));
  CHECK(dual_exponent(SchattenExponent(4.0 / 3.0)).value() ==
        doctest::Approx(4.0).epsilon(1e-12));
}

TEST_CASE("tensor element and pairing basics") {
  CHECK_THROWS_AS(TensorElement(ComplexMatrix(), kTwo, kTwo), InvalidInput);

  Rng rng(100);
  ComplexVector x = random_vector(3, rng);
  ComplexVector y = random_vector(4, rng);
  TensorElement u = rank_one_tensor(x, y, kTwo, kTwo);
  CHECK(u.left_dim() == 3);
  CHECK(u.right_dim() == 4);
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 4; ++b)
      CHECK(std::abs(u.coefficients()(a, b) - x[a] * y[b]) <= 1e-15);

  // Pairing against a matrix unit picks out one coefficient.
  CHECK(std::abs(tensor_pairing(u, ComplexMatrix::unit(1, 2, 3, 4)) -
                 x[1] * y[2]) <= 1e-15);
  CHECK_THROWS_AS(tensor_pairing(u, ComplexMatrix::identity(3)), InvalidInput);
}

TEST_CASE("nuclear oracle on elementary and orthogonal tensors") {
  Rng rng(200);
  ComplexVector x = random_vector(5, rng);
  ComplexVector y = random_vector(5, rng);
  TensorElement u = rank_one_tensor(x, y, kTwo, kTwo);
  CHECK(nuclear_oracle(u) ==
        doctest::Approx(norm(x) * norm(y)).epsilon(1e-12));

  // Two orthonormal directions on each side: trace norm 2.
  ComplexMatrix c = ComplexMatrix::unit(0, 0, 4, 4) +
                    ComplexMatrix::unit(1, 1, 4, 4);
  CHECK(nuclear_oracle(TensorElement(c, kTwo, kTwo)) ==
        doctest::Approx(2.0).epsilon(1e-12));

  CHECK_THROWS_AS(nuclear_oracle(TensorElement(c, kOne, kTwo)), InvalidInput);
  CHECK_THROWS_AS(
      nuclear_oracle(TensorElement(c, kTwo, SchattenExponent::infinity())),
      InvalidInput);
}

TEST_CASE("upper estimator is exact on rank-one tensors at budget 1") {
  Rng rng(300);
  ComplexVector x = random_vector(4, rng);
  ComplexVector y = random_vector(6, rng);
  const struct {
    SchattenExponent p, q;
  } legs[] = {{kTwo, kTwo},
              {kOne, SchattenExponent(1.5)},
              {SchattenExponent::infinity(), kTwo}};
  for (const auto& lg : legs) {
    TensorElement u = rank_one_tensor(x, y, lg.p, lg.q);
    ProjectiveNormEstimate est = projective_upper(u, 1, 50, 7);
    const double cross = lp_norm(x, lg.p) * lp_norm(y, lg.q);
    CHECK(est.upper == doctest::Approx(cross).epsilon(1e-10));
    REQUIRE(est.certificate_upper.size() == 1);
    ComplexMatrix recon = rebuild(est.certificate_upper, 4, 6);
    CHECK(frobenius_norm(recon - u.coefficients()) <= 1e-8);
  }
}

TEST_CASE("upper estimator matches the nuclear oracle on Hilbert legs") {
  Rng rng(400);
  for (int rep = 0; rep < 6; ++rep) {
    const int n = 3 + rep % 3;
    TensorElement u(random_grid(n, n, rng), kTwo, kTwo);
    const double oracle = nuclear_oracle(u);
    ProjectiveNormEstimate est = projective_upper(u, n, 400, 11 + rep);
    CHECK(est.upper >= oracle - 1e-8);
    CHECK(est.upper <= oracle * 1.01);  // within 1% of the exact value
    // The certificate really is a decomposition with that objective.
    CHECK(frobenius_norm(rebuild(est.certificate_upper, n, n) -
                         u.coefficients()) <= 1e-8 * frobenius_norm(u.coefficients()));
    CHECK(certificate_objective(est.certificate_upper, kTwo, kTwo) ==
          doctest::Approx(est.upper).epsilon(1e-9));
    // Objective trace never increases.
    for (std::size_t k = 1; k < est.objective_history.size(); ++k)
      CHECK(est.objective_history[k] <= est.objective_history[k - 1] + 1e-12);
  }
}

TEST_CASE("upper estimator rejects infeasible budgets and bad arguments") {
  Rng rng(500);
  TensorElement u(random_grid(4, 4, rng), kTwo, kTwo);
  CHECK_THROWS_AS(projective_upper(u, 2, 100, 1), NumericalFailure);
  try {
    projective_upper(u, 2, 100, 1);
  } catch (const NumericalFailure& e) {
    CHECK(e.residual() > 1e-8);
  }
  CHECK_THROWS_AS(projective_upper(u, 0, 100, 1), InvalidInput);
  CHECK_THROWS_AS(projective_upper(u, 4, 0, 1), InvalidInput);
  // A budget above the matrix rank is fine.
  CHECK_NOTHROW(projective_upper(u, 6, 50, 1));
}

TEST_CASE("lower estimator: aligned dual is tight on Hilbert legs") {
  Rng rng(600);
  for (int rep = 0; rep < 5; ++rep) {
    TensorElement u(random_grid(5, 4, rng), kTwo, kTwo);
    const double oracle = nuclear_oracle(u);
    ProjectiveNormEstimate est = projective_lower(u, 4, 21 + rep);
    CHECK(est.lower <= oracle + 1e-8);
    CHECK(est.lower >= oracle - 1e-8);
    // Certificate achieves the bound and has certified norm <= 1.
    CHECK(std::abs(tensor_pairing(u, est.certificate_lower)) ==
          doctest::Approx(est.lower).epsilon(1e-12));
    CHECK(operator_norm(est.certificate_lower) <= 1.0 + 1e-10);
  }
}

TEST_CASE("lower estimator: zero tensor and exponent-1 legs") {
  TensorElement zero(ComplexMatrix(3, 3), kTwo, kTwo);
  CHECK(projective_lower(zero, 3, 5).lower == 0.0);

  // Both legs exponent 1: the projective norm is the entrywise l1 norm, and
  // the sign dual attains it.
  Rng rng(700);
  ComplexMatrix c = random_grid(4, 5, rng);
  TensorElement u(c, kOne, kOne);
  double l1 = 0.0;
  for (const Complex& z : c.entries()) l1 += std::abs(z);
  ProjectiveNormEstimate lo = projective_lower(u, 3, 9);
  CHECK(lo.lower == doctest::Approx(l1).epsilon(1e-12));
  CHECK(max_abs_entry(lo.certificate_lower) <= 1.0 + 1e-12);

  // The upper side closes the same value from above.
  ProjectiveNormEstimate est = estimate_projective_norm(u, 4, 600, 3, 9);
  CHECK(est.upper >= l1 - 1e-8);
  CHECK(est.lower <= est.upper + 1e-8);
}

TEST_CASE("both estimators bracket the cross norm on elementary tensors") {
  Rng rng(800);
  ComplexVector x = random_vector(5, rng);
  ComplexVector y = random_vector(6, rng);
  const struct {
    SchattenExponent p, q;
  } legs[] = {{kTwo, kTwo},
              {kOne, kOne},
              {SchattenExponent(1.5), kTwo},
              {kOne, SchattenExponent::infinity()}};
  for (const auto& lg : legs) {
    TensorElement u = rank_one_tensor(x, y, lg.p, lg.q);
    const double cross = lp_norm(x, lg.p) * lp_norm(y, lg.q);
    ProjectiveNormEstimate up = projective_upper(u, 1, 60, 3);
    ProjectiveNormEstimate lo = projective_lower(u, 6, 3);
    CHECK(up.upper <= cross + 1e-6);
    CHECK(up.upper >= cross - 1e-6);
    CHECK(lo.lower >= cross - 1e-6);
    CHECK(lo.lower <= cross + 1e-6);
  }
}

TEST_CASE("sandwich property on random Hilbert-leg tensors up to 8x8") {
  Rng rng(900);
  for (int rep = 0; rep < 12; ++rep) {
    const int rows = 2 + rng.uniform_int(0, 6);
    const int cols = 2 + rng.uniform_int(0, 6);
    ComplexMatrix c = random_grid(rows, cols, rng);
    if (rep % 3 == 0) c = matmul(c, adjoint(c));  // occasionally rank-degenerate shape
    TensorElement u(c, kTwo, kTwo);
    const double oracle = nuclear_oracle(u);
    ProjectiveNormEstimate est = estimate_projective_norm(
        u, std::min(c.rows(), c.cols()), 300, 5, 31 + rep);
    CHECK(est.lower <= oracle + 1e-8);
    CHECK(oracle <= est.upper + 1e-8);
    CHECK(est.lower <= est.upper + 1e-8);
  }
}

TEST_CASE("p-leg upper bounds dominate the Hilbert oracle") {
  Rng rng(1000);
  ComplexMatrix c = random_grid(5, 5, rng);
  const double oracle = nuclear_oracle(TensorElement(c, kTwo, kTwo));
  const SchattenExponent ps[] = {kOne, SchattenExponent(1.5)};
  for (const SchattenExponent& p : ps) {
    for (const SchattenExponent& q : ps) {
      ProjectiveNormEstimate est =
          projective_upper(TensorElement(c, p, q), 5, 400, 13);
      CHECK(est.upper >= oracle - 1e-8);
    }
  }
}

TEST_CASE("estimates are reproducible from the seed") {
  Rng rng(1100);
  TensorElement u(random_grid(5, 5, rng), SchattenExponent(1.5), kTwo);
  ProjectiveNormEstimate a = estimate_projective_norm(u, 5, 200, 4, 77);
  ProjectiveNormEstimate b = estimate_projective_norm(u, 5, 200, 4, 77);
  CHECK(a.upper == b.upper);
  CHECK(a.lower == b.lower);
  REQUIRE(a.objective_history.size() == b.objective_history.size());
  for (std::size_t k = 0; k < a.objective_history.size(); ++k)
    CHECK(a.objective_history[k] == b.objective_history[k]);
}
