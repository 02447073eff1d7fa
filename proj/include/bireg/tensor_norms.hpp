#pragma once

#include <cstdint>
#include <limits>
#include <vector>

#include "bireg/matrix.hpp"
#include "bireg/operators.hpp"

namespace bireg {

/// An element u = sum_{a,b} C[a][b] (x_a (x) y_b) of a two-leg tensor
/// product, expressed against the fixed coordinate bases of the legs. Each
/// leg carries the exponent of the norm its vectors are measured in
/// (coordinate p-norm; 2 = Hilbert leg).
class TensorElement {
 public:
  TensorElement(ComplexMatrix coefficients, SchattenExponent left_norm,
                SchattenExponent right_norm);

  int left_dim() const { return coefficients_.rows(); }
  int right_dim() const { return coefficients_.cols(); }
  const ComplexMatrix& coefficients() const { return coefficients_; }
  SchattenExponent left_norm() const { return left_norm_; }
  SchattenExponent right_norm() const { return right_norm_; }

 private:
  ComplexMatrix coefficients_;
  SchattenExponent left_norm_;
  SchattenExponent right_norm_;
};

/// Elementary tensor x (x) y: coefficient grid C[a][b] = x_a * y_b.
TensorElement rank_one_tensor(const ComplexVector& x, const ComplexVector& y,
                              SchattenExponent left_norm,
                              SchattenExponent right_norm);

/// Coordinate p-norm of a vector (p = infinity gives the max modulus).
double lp_norm(const ComplexVector& v, SchattenExponent p);

/// Hoelder-conjugate exponent: 1 <-> infinity, p <-> p/(p-1).
SchattenExponent dual_exponent(SchattenExponent p);

/// Pairing of u against a bilinear form given by its coordinate grid
/// M[a][b] = m(x_a, y_b): returns sum_{a,b} C[a][b] * M[a][b].
Complex tensor_pairing(const TensorElement& u, const ComplexMatrix& dual_grid);

/// One term of an explicit decomposition u = sum_i left_i (x) right_i.
struct DecompositionPair {
  ComplexVector left;
  ComplexVector right;
};

/// Two-sided estimate of the projective norm
///   inf { sum_i ||x_i||_p ||y_i||_q : u = sum_i x_i (x) y_i },
/// with the witnesses for both sides. Every produced estimate satisfies
/// lower <= upper + 1e-8; a side not computed stays at its neutral default.
struct ProjectiveNormEstimate {
  double upper = std::numeric_limits<double>::infinity();
  double lower = 0.0;
  std::vector<DecompositionPair> certificate_upper;
  ComplexMatrix certificate_lower;  // dual-form grid achieving `lower`
  std::vector<double> objective_history;  // upper-bound objective per sweep
};

/// Exact projective norm for Hilbert legs (both exponents 2): the trace norm
/// of the coefficient grid. Rejects other leg exponents.
double nuclear_oracle(const TensorElement& u);

/// Upper bound by alternating minimization over exact rank-`rank_budget`
/// decompositions, initialized from the SVD of the coefficient grid and
/// improved by random pair rotations and shears that preserve the
/// reconstruction exactly. The objective never increases within a restart;
/// the best of 5 restarts is returned. Throws a numerical-failure error
/// carrying the residual when `rank_budget` cannot reconstruct the grid to
/// 1e-8 relative accuracy.
ProjectiveNormEstimate projective_upper(const TensorElement& u, int rank_budget,
                                        int iters, std::uint64_t seed);

/// Lower bound by pairing u against bilinear forms of certified norm <= 1:
/// randomized rank-one Hoelder duals sharpened by alternating maximization,
/// the deterministic SVD-aligned dual (tight on Hilbert legs), and the
/// entrywise sign dual when both legs carry exponent 1.
ProjectiveNormEstimate projective_lower(const TensorElement& u, int trials,
                                        std::uint64_t seed);

/// Both bounds combined into one estimate; throws a numerical-failure error
/// if the certified sides cross by more than 1e-8.
ProjectiveNormEstimate estimate_projective_norm(const TensorElement& u,
                                                int rank_budget, int iters,
                                                int trials, std::uint64_t seed);

}  // namespace bireg
