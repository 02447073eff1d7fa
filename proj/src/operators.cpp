#include "bireg/operators.hpp"

#include <cmath>

namespace bireg {

SchattenExponent::SchattenExponent(double p) : p_(p) {
  if (!(p >= 1.0))  // rejects NaN as well
    throw InvalidInput("Schatten exponent must satisfy p >= 1");
  if (std::isinf(p)) {
    infinite_ = true;
    p_ = 0.0;
  }
}

SchattenExponent SchattenExponent::infinity() { return SchattenExponent(); }

double SchattenExponent::value() const {
  if (infinite_)
    throw InvalidInput("infinite Schatten exponent has no finite value");
  return p_;
}

double schatten_norm(const ComplexMatrix& a, SchattenExponent p) {
  if (p.is_infinite()) return operator_norm(a);
  if (p.value() == 2.0) return frobenius_norm(a);
  const SvdResult s = svd(a);
  if (p.value() == 1.0) {
    double sum = 0.0;
    for (double v : s.sigma.values) sum += v;
    return sum;
  }
  double sum = 0.0;
  for (double v : s.sigma.values) sum += std::pow(v, p.value());
  return std::pow(sum, 1.0 / p.value());
}

ComplexMatrix rank_one(const ComplexVector& xi, const ComplexVector& eta) {
  return ComplexMatrix::build(xi.dim(), eta.dim(), [&](int r, int s) {
    return xi[r] * std::conj(eta[s]);
  });
}

ComplexMatrix coordinate_projection(int j, int dim) {
  if (j < 0 || j > dim)
    throw InvalidInput("coordinate_projection: need 0 <= j <= dim");
  return ComplexMatrix::build(dim, dim, [&](int r, int c) {
    return (r == c && r < j) ? Complex(1.0, 0.0) : Complex(0.0, 0.0);
  });
}

ComplexMatrix schur(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (!a.same_shape(b)) throw InvalidInput("schur: shape mismatch");
  std::vector<Complex> e(a.entries().begin(), a.entries().end());
  for (std::size_t k = 0; k < e.size(); ++k) e[k] *= b.entries()[k];
  return ComplexMatrix(a.rows(), a.cols(), std::move(e));
}

double tail_sup(const ComplexMatrix& u, int m, int n) {
  if (m < 0 || n < 0) throw InvalidInput("tail_sup: negative block start");
  double sup = 0.0;
  for (int r = m; r < u.rows(); ++r)
    for (int s = n; s < u.cols(); ++s) sup = std::max(sup, std::abs(u(r, s)));
  return sup;
}

double schur_tail_bound(const ComplexMatrix& v, const ComplexMatrix& w,
                        const ComplexMatrix& u, int m, int n) {
  if (!v.same_shape(w) || !v.same_shape(u))
    throw InvalidInput("schur_tail_bound: shape mismatch");
  const double sup = tail_sup(u, m, n);
  double tail_energy = 0.0;
  for (int r = m; r < v.rows(); ++r)
    for (int s = n; s < v.cols(); ++s) tail_energy += std::norm(v(r, s) - w(r, s));
  return sup * sup * tail_energy;
}

}  // namespace bireg
