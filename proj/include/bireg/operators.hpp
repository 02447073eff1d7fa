#pragma once

#include "bireg/matrix.hpp"

namespace bireg {

/// Exponent for a Schatten norm: a real p >= 1 or infinity (operator norm).
class SchattenExponent {
 public:
  SchattenExponent(double p);  // NOLINT(google-explicit-constructor)
  static SchattenExponent infinity();

  bool is_infinite() const { return infinite_; }
  double value() const;  // throws if infinite

 private:
  SchattenExponent() : infinite_(true) {}
  double p_ = 0.0;
  bool infinite_ = false;
};

/// (sum_k sigma_k^p)^{1/p} over the singular values of A; the operator norm
/// for an infinite exponent. p = 1 sums the spectrum directly and p = 2 is
/// evaluated entrywise; other finite p go through the SVD.
double schatten_norm(const ComplexMatrix& a, SchattenExponent p);

/// theta_{xi,eta}: gamma -> <gamma, eta> xi, materialized as the matrix with
/// entries M_{rs} = xi_r conj(eta_s). Rectangular when dims differ.
ComplexMatrix rank_one(const ComplexVector& xi, const ComplexVector& eta);

/// Orthogonal projection onto the span of the first j coordinates: a
/// diagonal 0/1 matrix of size dim x dim whose first j diagonal entries are 1.
ComplexMatrix coordinate_projection(int j, int dim);

/// Entrywise (Schur) product.
ComplexMatrix schur(const ComplexMatrix& a, const ComplexMatrix& b);

/// Maximum modulus of U over the tail block that excludes the first m rows
/// and first n columns. Zero for an empty tail.
double tail_sup(const ComplexMatrix& u, int m, int n);

/// tail_sup(U,m,n)^2 * sum over the same tail block of |V_{rs} - W_{rs}|^2.
/// When V and W agree outside that block, this bounds ||V*U - W*U||_2^2 for
/// the Schur product.
double schur_tail_bound(const ComplexMatrix& v, const ComplexMatrix& w,
                        const ComplexMatrix& u, int m, int n);

}  // namespace bireg
