#include "bireg/tensor_norms.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <span>
#include <utility>

#include "bireg/rng.hpp"

namespace bireg {

namespace {

double lp_norm_span(std::span<const Complex> v, SchattenExponent p) {
  if (v.empty()) return 0.0;
  if (p.is_infinite()) {
    double best = 0.0;
    for (const Complex& z : v) best = std::max(best, std::abs(z));
    return best;
  }
  const double pv = p.value();
  if (pv == 2.0) {
    double sum = 0.0;
    for (const Complex& z : v) sum += std::norm(z);
    return std::sqrt(sum);
  }
  if (pv == 1.0) {
    double sum = 0.0;
    for (const Complex& z : v) sum += std::abs(z);
    return sum;
  }
  double sum = 0.0;
  for (const Complex& z : v) sum += std::pow(std::abs(z), pv);
  return std::pow(sum, 1.0 / pv);
}

/// Hoelder witness: xi with ||xi||_{p'} <= 1 and xi . v = ||v||_p (dot
/// product without conjugation). Zero input gives the zero witness.
std::vector<Complex> holder_witness(std::span<const Complex> v,
                                    SchattenExponent p) {
  std::vector<Complex> xi(v.size(), Complex(0.0, 0.0));
  if (p.is_infinite()) {
    std::size_t best = 0;
    double best_mod = 0.0;
    for (std::size_t k = 0; k < v.size(); ++k) {
      const double m = std::abs(v[k]);
      if (m > best_mod) {
        best_mod = m;
        best = k;
      }
    }
    if (best_mod > 0.0) xi[best] = std::conj(v[best]) / best_mod;
    return xi;
  }
  const double pv = p.value();
  const double np = lp_norm_span(v, p);
  if (np == 0.0) return xi;
  for (std::size_t k = 0; k < v.size(); ++k) {
    const double m = std::abs(v[k]);
    if (m == 0.0) continue;
    // |xi_k| = (|v_k| / ||v||_p)^(p-1), phase cancelling v_k's.
    xi[k] = (std::conj(v[k]) / m) * std::pow(m / np, pv - 1.0);
  }
  // Defensive renormalization against rounding in pow.
  const double dual = lp_norm_span(xi, dual_exponent(p));
  if (dual > 1.0)
    for (Complex& z : xi) z /= dual;
  return xi;
}

ComplexVector to_vector(std::vector<Complex> v) {
  return ComplexVector(std::move(v));
}

/// Decomposition state for the upper-bound search: column vectors xs[i] and
/// row vectors ys[i] with sum_i xs[i] ys[i]^T equal to the coefficient grid.
struct Decomposition {
  std::vector<std::vector<Complex>> xs;
  std::vector<std::vector<Complex>> ys;
  std::vector<double> xnorm;  // ||xs[i]||_p
  std::vector<double> ynorm;  // ||ys[i]||_q

  double objective() const {
    double sum = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) sum += xnorm[i] * ynorm[i];
    return sum;
  }
};

void refresh_norms(Decomposition& d, SchattenExponent p, SchattenExponent q) {
  d.xnorm.resize(d.xs.size());
  d.ynorm.resize(d.ys.size());
  for (std::size_t i = 0; i < d.xs.size(); ++i) {
    d.xnorm[i] = lp_norm_span(d.xs[i], p);
    d.ynorm[i] = lp_norm_span(d.ys[i], q);
  }
}

/// Equalize the scale of each pair (objective-neutral; keeps the iterates
/// well conditioned and the certificate presentable).
void rebalance(Decomposition& d, SchattenExponent p, SchattenExponent q) {
  for (std::size_t i = 0; i < d.xs.size(); ++i) {
    const double nx = d.xnorm[i];
    const double ny = d.ynorm[i];
    if (nx <= 0.0 || ny <= 0.0) continue;
    const double t = std::sqrt(ny / nx);
    for (Complex& z : d.xs[i]) z *= t;
    for (Complex& z : d.ys[i]) z /= t;
  }
  refresh_norms(d, p, q);
}

Decomposition svd_init(const SvdResult& dec, int rank_budget, int left_dim,
                       int right_dim) {
  Decomposition d;
  const int available = static_cast<int>(dec.sigma.values.size());
  d.xs.assign(static_cast<std::size_t>(rank_budget),
              std::vector<Complex>(static_cast<std::size_t>(left_dim)));
  d.ys.assign(static_cast<std::size_t>(rank_budget),
              std::vector<Complex>(static_cast<std::size_t>(right_dim)));
  for (int i = 0; i < rank_budget && i < available; ++i) {
    const double root = std::sqrt(dec.sigma.values[static_cast<std::size_t>(i)]);
    for (int a = 0; a < left_dim; ++a)
      d.xs[static_cast<std::size_t>(i)][static_cast<std::size_t>(a)] =
          root * dec.u(a, i);
    // y_i = sqrt(sigma) * (row i of V^*), so x_i y_i^T sums to U Sigma V^*.
    for (int b = 0; b < right_dim; ++b)
      d.ys[static_cast<std::size_t>(i)][static_cast<std::size_t>(b)] =
          root * std::conj(dec.v(b, i));
  }
  return d;
}

ComplexMatrix reconstruct(const Decomposition& d, int left_dim,
                          int right_dim) {
  std::vector<Complex> entries(
      static_cast<std::size_t>(left_dim) * static_cast<std::size_t>(right_dim),
      Complex(0.0, 0.0));
  for (std::size_t i = 0; i < d.xs.size(); ++i)
    for (int a = 0; a < left_dim; ++a) {
      const Complex xa = d.xs[i][static_cast<std::size_t>(a)];
      if (xa == Complex(0.0, 0.0)) continue;
      for (int b = 0; b < right_dim; ++b)
        entries[static_cast<std::size_t>(a) * static_cast<std::size_t>(right_dim) +
                static_cast<std::size_t>(b)] +=
            xa * d.ys[i][static_cast<std::size_t>(b)];
    }
  return ComplexMatrix(left_dim, right_dim, std::move(entries));
}

/// Unitary 2x2 mix of pairs (i, j); preserves the reconstruction exactly in
/// exact arithmetic. theta is the rotation angle, phi its phase.
void apply_rotation(Decomposition& d, std::size_t i, std::size_t j,
                    double theta, double phi) {
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  const Complex e_pos = std::polar(1.0, phi);
  const Complex e_neg = std::conj(e_pos);
  for (std::size_t a = 0; a < d.xs[i].size(); ++a) {
    const Complex xi = d.xs[i][a];
    const Complex xj = d.xs[j][a];
    d.xs[i][a] = c * xi - (s * e_neg) * xj;
    d.xs[j][a] = (s * e_pos) * xi + c * xj;
  }
  for (std::size_t b = 0; b < d.ys[i].size(); ++b) {
    const Complex yi = d.ys[i][b];
    const Complex yj = d.ys[j][b];
    d.ys[i][b] = c * yi - (s * e_pos) * yj;
    d.ys[j][b] = (s * e_neg) * yi + c * yj;
  }
}

/// Shear: x_j += alpha x_i and compensating y_i -= alpha y_j.
void apply_shear(Decomposition& d, std::size_t i, std::size_t j,
                 Complex alpha) {
  for (std::size_t a = 0; a < d.xs[i].size(); ++a)
    d.xs[j][a] += alpha * d.xs[i][a];
  for (std::size_t b = 0; b < d.ys[i].size(); ++b)
    d.ys[i][b] -= alpha * d.ys[j][b];
}

struct RestartOutcome {
  Decomposition decomposition;
  double objective = 0.0;
  std::vector<double> history;
};

RestartOutcome run_restart(const SvdResult& dec, const TensorElement& u,
                           int rank_budget, int iters, Rng rng, bool shuffle) {
  const SchattenExponent p = u.left_norm();
  const SchattenExponent q = u.right_norm();
  Decomposition d = svd_init(dec, rank_budget, u.left_dim(), u.right_dim());
  const std::size_t r = d.xs.size();
  if (shuffle && r >= 2) {
    for (std::size_t k = 0; k < 2 * r; ++k) {
      const std::size_t i = static_cast<std::size_t>(
          rng.uniform_int(0, static_cast<int>(r) - 1));
      std::size_t j = static_cast<std::size_t>(
          rng.uniform_int(0, static_cast<int>(r) - 2));
      if (j >= i) ++j;
      apply_rotation(d, i, j, rng.uniform(0.0, 1.2), rng.uniform(0.0, 6.283));
    }
  }
  refresh_norms(d, p, q);
  rebalance(d, p, q);

  RestartOutcome out;
  out.history.push_back(d.objective());
  for (int it = 0; it < iters; ++it) {
    if (r >= 2) {
      const std::size_t i = static_cast<std::size_t>(
          rng.uniform_int(0, static_cast<int>(r) - 1));
      std::size_t j = static_cast<std::size_t>(
          rng.uniform_int(0, static_cast<int>(r) - 2));
      if (j >= i) ++j;
      const double before = d.xnorm[i] * d.ynorm[i] + d.xnorm[j] * d.ynorm[j];
      // Only pairs i and j are touched; keep copies to revert a bad move.
      std::vector<Complex> xi = d.xs[i], xj = d.xs[j], yi = d.ys[i],
                           yj = d.ys[j];
      if (rng.uniform() < 0.5) {
        const double theta =
            1.2 * std::exp(rng.uniform(-6.0, 0.0));
        apply_rotation(d, i, j, theta, rng.uniform(0.0, 6.283));
      } else {
        const Complex alpha =
            std::exp(rng.uniform(-6.0, 0.0)) * rng.normal_complex();
        apply_shear(d, i, j, alpha);
      }
      const double nxi = lp_norm_span(d.xs[i], p);
      const double nxj = lp_norm_span(d.xs[j], p);
      const double nyi = lp_norm_span(d.ys[i], q);
      const double nyj = lp_norm_span(d.ys[j], q);
      const double after = nxi * nyi + nxj * nyj;
      if (after < before) {
        d.xnorm[i] = nxi;
        d.xnorm[j] = nxj;
        d.ynorm[i] = nyi;
        d.ynorm[j] = nyj;
      } else {  // revert
        d.xs[i] = std::move(xi);
        d.xs[j] = std::move(xj);
        d.ys[i] = std::move(yi);
        d.ys[j] = std::move(yj);
      }
      if ((it + 1) % 128 == 0) rebalance(d, p, q);
    }
    out.history.push_back(d.objective());
  }
  rebalance(d, p, q);
  out.objective = d.objective();
  out.decomposition = std::move(d);
  return out;
}

double certified_dual_scale(const ComplexMatrix& m, SchattenExponent p,
                            SchattenExponent q, int left_dim, int right_dim) {
  // |x^T M y| <= ||x||_2 ||M||_op ||y||_2, and ||.||_2 <= ||.||_p for p <= 2
  // (<= d^(1/2-1/p) ||.||_p otherwise), so dividing by this product certifies
  // the bilinear norm at 1 for any leg exponents.
  auto leg_factor = [](SchattenExponent e, int d) {
    if (e.is_infinite()) return std::sqrt(static_cast<double>(d));
    if (e.value() <= 2.0) return 1.0;
    return std::pow(static_cast<double>(d), 0.5 - 1.0 / e.value());
  };
  const double base = operator_norm(m);
  return std::max(base, 1.0) * leg_factor(p, left_dim) *
         leg_factor(q, right_dim);
}

}  // namespace

TensorElement::TensorElement(ComplexMatrix coefficients,
                             SchattenExponent left_norm,
                             SchattenExponent right_norm)
    : coefficients_(std::move(coefficients)),
      left_norm_(left_norm),
      right_norm_(right_norm) {
  if (coefficients_.empty())
    throw InvalidInput("TensorElement: coefficient grid must be nonempty");
}

TensorElement rank_one_tensor(const ComplexVector& x, const ComplexVector& y,
                              SchattenExponent left_norm,
                              SchattenExponent right_norm) {
  if (x.dim() == 0 || y.dim() == 0)
    throw InvalidInput("rank_one_tensor: legs must be nonempty");
  ComplexMatrix c = ComplexMatrix::build(
      x.dim(), y.dim(), [&](int a, int b) { return x[a] * y[b]; });
  return TensorElement(std::move(c), left_norm, right_norm);
}

double lp_norm(const ComplexVector& v, SchattenExponent p) {
  return lp_norm_span(v.entries(), p);
}

SchattenExponent dual_exponent(SchattenExponent p) {
  if (p.is_infinite()) return SchattenExponent(1.0);
  const double pv = p.value();
  if (pv == 1.0) return SchattenExponent::infinity();
  return SchattenExponent(pv / (pv - 1.0));
}

Complex tensor_pairing(const TensorElement& u, const ComplexMatrix& dual_grid) {
  if (!u.coefficients().same_shape(dual_grid))
    throw InvalidInput("tensor_pairing: dual grid shape mismatch");
  Complex sum(0.0, 0.0);
  const std::span<const Complex> c = u.coefficients().entries();
  const std::span<const Complex> m = dual_grid.entries();
  for (std::size_t k = 0; k < c.size(); ++k) sum += c[k] * m[k];
  return sum;
}

double nuclear_oracle(const TensorElement& u) {
  const auto hilbert = [](SchattenExponent e) {
    return !e.is_infinite() && e.value() == 2.0;
  };
  if (!hilbert(u.left_norm()) || !hilbert(u.right_norm()))
    throw InvalidInput("nuclear_oracle: requires Hilbert legs (exponent 2)");
  return schatten_norm(u.coefficients(), SchattenExponent(1.0));
}

ProjectiveNormEstimate projective_upper(const TensorElement& u, int rank_budget,
                                        int iters, std::uint64_t seed) {
  if (rank_budget < 1)
    throw InvalidInput("projective_upper: rank budget must be positive");
  if (iters < 1) throw InvalidInput("projective_upper: iters must be positive");

  const ComplexMatrix& c = u.coefficients();
  const double scale = frobenius_norm(c);
  const SvdResult dec = svd(c);

  // Feasibility: the rank budget must reconstruct the grid.
  {
    double tail = 0.0;
    for (std::size_t k = static_cast<std::size_t>(rank_budget);
         k < dec.sigma.values.size(); ++k)
      tail += dec.sigma.values[k] * dec.sigma.values[k];
    const double residual = std::sqrt(tail) / (scale > 0.0 ? scale : 1.0);
    if (residual > 1e-8)
      throw NumericalFailure(
          "projective_upper: rank budget cannot reconstruct the grid",
          residual);
  }

  constexpr int kRestarts = 5;
  RestartOutcome best;
  bool have_best = false;
  for (int restart = 0; restart < kRestarts; ++restart) {
    RestartOutcome out =
        run_restart(dec, u, rank_budget, iters,
                    Rng::derive(seed, 0x9c1, static_cast<std::uint64_t>(restart)),
                    restart > 0);
    if (!have_best || out.objective < best.objective) {
      best = std::move(out);
      have_best = true;
    }
  }

  const double residual =
      frobenius_norm(reconstruct(best.decomposition, u.left_dim(),
                                 u.right_dim()) -
                     c) /
      (scale > 0.0 ? scale : 1.0);
  if (residual > 1e-8)
    throw NumericalFailure("projective_upper: decomposition drifted off the grid",
                           residual);

  ProjectiveNormEstimate est;
  est.upper = best.objective;
  est.objective_history = std::move(best.history);
  for (std::size_t i = 0; i < best.decomposition.xs.size(); ++i)
    est.certificate_upper.push_back(
        {to_vector(best.decomposition.xs[i]), to_vector(best.decomposition.ys[i])});
  return est;
}

ProjectiveNormEstimate projective_lower(const TensorElement& u, int trials,
                                        std::uint64_t seed) {
  if (trials < 1) throw InvalidInput("projective_lower: trials must be positive");
  const ComplexMatrix& c = u.coefficients();
  const int ld = u.left_dim();
  const int rd = u.right_dim();
  const SchattenExponent p = u.left_norm();
  const SchattenExponent q = u.right_norm();
  const SchattenExponent pd = dual_exponent(p);
  const SchattenExponent qd = dual_exponent(q);

  ProjectiveNormEstimate est;
  est.certificate_lower = ComplexMatrix(ld, rd);

  auto consider = [&](const ComplexMatrix& dual) {
    const double value = std::abs(tensor_pairing(u, dual));
    if (value > est.lower) {
      est.lower = value;
      est.certificate_lower = dual;
    }
  };

  // Deterministic SVD-aligned dual: entrywise conjugate of U V^*, rescaled by
  // a certified bound on its bilinear norm (exactly 1 for legs with p,q <= 2,
  // so it reproduces the trace norm there).
  {
    const SvdResult dec = svd(c);
    ComplexMatrix aligned = conj_entries(matmul(dec.u, adjoint(dec.v)));
    const double s = certified_dual_scale(aligned, p, q, ld, rd);
    if (s > 0.0) consider((1.0 / s) * aligned);
  }

  // Entrywise sign dual: exact for two exponent-1 legs, where the projective
  // norm is the entrywise l1 norm of the grid.
  if (!p.is_infinite() && p.value() == 1.0 && !q.is_infinite() &&
      q.value() == 1.0) {
    consider(ComplexMatrix::build(ld, rd, [&](int a, int b) {
      const Complex z = c(a, b);
      const double m = std::abs(z);
      return m > 0.0 ? std::conj(z) / m : Complex(1.0, 0.0);
    }));
  }

  // Randomized rank-one Hoelder duals xi eta^T, sharpened by alternating
  // maximization; each factor has unit dual norm by construction.
  for (int t = 0; t < trials; ++t) {
    Rng rng = Rng::derive(seed, 0x7e5, static_cast<std::uint64_t>(t));
    std::vector<Complex> eta(static_cast<std::size_t>(rd));
    for (Complex& z : eta) z = rng.normal_complex();
    const double en = lp_norm_span(eta, qd);
    if (en == 0.0) continue;
    for (Complex& z : eta) z /= en;

    std::vector<Complex> xi(static_cast<std::size_t>(ld), Complex(0.0, 0.0));
    for (int round = 0; round < 6; ++round) {
      std::vector<Complex> v(static_cast<std::size_t>(ld), Complex(0.0, 0.0));
      for (int a = 0; a < ld; ++a)
        for (int b = 0; b < rd; ++b)
          v[static_cast<std::size_t>(a)] +=
              c(a, b) * eta[static_cast<std::size_t>(b)];
      xi = holder_witness(v, p);
      std::vector<Complex> w(static_cast<std::size_t>(rd), Complex(0.0, 0.0));
      for (int a = 0; a < ld; ++a)
        for (int b = 0; b < rd; ++b)
          w[static_cast<std::size_t>(b)] +=
              c(a, b) * xi[static_cast<std::size_t>(a)];
      eta = holder_witness(w, q);
    }
    consider(ComplexMatrix::build(ld, rd, [&](int a, int b) {
      return xi[static_cast<std::size_t>(a)] * eta[static_cast<std::size_t>(b)];
    }));
  }
  return est;
}

ProjectiveNormEstimate estimate_projective_norm(const TensorElement& u,
                                                int rank_budget, int iters,
                                                int trials, std::uint64_t seed) {
  ProjectiveNormEstimate up = projective_upper(u, rank_budget, iters, seed);
  ProjectiveNormEstimate lo = projective_lower(u, trials, seed);
  ProjectiveNormEstimate est;
  est.upper = up.upper;
  est.certificate_upper = std::move(up.certificate_upper);
  est.objective_history = std::move(up.objective_history);
  est.lower = lo.lower;
  est.certificate_lower = std::move(lo.certificate_lower);
  if (est.lower > est.upper + 1e-8)
    throw NumericalFailure("projective norm estimate: certified sides crossed",
                           est.lower - est.upper);
  return est;
}

}  // namespace bireg
