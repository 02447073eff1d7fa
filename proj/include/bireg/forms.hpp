#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>

#include "bireg/matrix.hpp"

namespace bireg {

/// A conjugate-linear map on dim x dim matrices together with a certified
/// bound: ||apply(A)||_2 <= norm_bound * ||A||_2. Immutable and shareable.
class RieszMap {
 public:
  using Action = std::function<ComplexMatrix(const ComplexMatrix&)>;

  RieszMap(int dim, Action action, double norm_bound, std::string label);

  ComplexMatrix apply(const ComplexMatrix& a) const;
  int dim() const { return dim_; }
  double norm_bound() const { return norm_bound_; }
  const std::string& label() const { return label_; }

 private:
  int dim_;
  Action action_;
  double norm_bound_;
  std::string label_;
};

/// Masked conjugation: coefficient c_{ij} goes to conj(c_{ij}) when j <= i
/// and to 0 above the diagonal. Contractive (norm_bound 1).
RieszMap triangular_phi(int dim);

/// Plain entrywise conjugation, norm_bound 1.
RieszMap conjugation_map(int dim);

/// Generic conjugate-linear map A -> unvec(M vec(conj A)) with a dense
/// random M scaled to operator norm 0.95. Intended for small dim (the
/// dim^2 x dim^2 matrix is materialized); rejects dim > 8.
RieszMap random_riesz_dense(int dim, std::uint64_t seed);

/// Conjugate-linear map A -> G * conj(A) (entrywise weight) plus a few
/// finite-rank terms <Y_k, A> Z_k, with certified norm_bound <= 0.95.
/// Cheap to apply at any dimension.
RieszMap random_riesz_weighted(int dim, std::uint64_t seed);

/// Bounded bilinear form on pairs of matrices, linear in each slot, with a
/// certified bound |evaluate(S,T)| <= norm_bound ||S||_2 ||T||_2.
class BilinearForm {
 public:
  using Eval =
      std::function<Complex(const ComplexMatrix&, const ComplexMatrix&)>;

  BilinearForm(Eval eval, double norm_bound, std::string label);

  Complex operator()(const ComplexMatrix& s, const ComplexMatrix& t) const {
    return eval_(s, t);
  }
  double norm_bound() const { return norm_bound_; }
  const std::string& label() const { return label_; }

 private:
  Eval eval_;
  double norm_bound_;
  std::string label_;
};

/// m(S, T) = <T, phi(S)>; linear in both slots because phi and the second
/// slot of the inner product are each conjugate-linear.
BilinearForm riesz_form(const RieszMap& phi);

/// A linear map on the matrix space (an operator on the Hilbert-Schmidt
/// space) with a certified induced bound ||apply(A)||_2 <= norm_bound ||A||_2.
class Superoperator {
 public:
  using Action = std::function<ComplexMatrix(const ComplexMatrix&)>;

  Superoperator(int dim, Action action, double norm_bound, std::string label);

  ComplexMatrix apply(const ComplexMatrix& a) const;
  int dim() const { return dim_; }
  double norm_bound() const { return norm_bound_; }
  const std::string& label() const { return label_; }

 private:
  int dim_;
  Action action_;
  double norm_bound_;
  std::string label_;
};

Superoperator identity_superop(int dim);
Superoperator zero_superop(int dim);

/// A -> rank_one(S (A e_1), e_1): the map sending A to the rank-one operator
/// with first leg S applied to A's action on the first basis vector.
/// norm_bound is the operator norm of S, computed via SVD unless the caller
/// supplies certified_norm_bound (an upper bound known exactly, e.g. for
/// structured S; family-level probe checks re-verify declared bounds).
Superoperator superop_from_vector_action(
    const ComplexMatrix& s,
    std::optional<double> certified_norm_bound = std::nullopt);

/// apply = t1.apply after t2.apply; norm_bound multiplies.
Superoperator compose_superops(const Superoperator& t1, const Superoperator& t2);

/// Dense dim^2 x dim^2 matrix of the map against row-major vectorization.
/// For small-dimension cross-checks only; rejects dim > 8.
ComplexMatrix materialize(const Superoperator& t);

/// Bilinear form pairing a superoperator with a matrix.
class SuperopForm {
 public:
  using Eval = std::function<Complex(const Superoperator&, const ComplexMatrix&)>;

  SuperopForm(Eval eval, double norm_bound, std::string label);

  Complex operator()(const Superoperator& t, const ComplexMatrix& a) const {
    return eval_(t, a);
  }
  double norm_bound() const { return norm_bound_; }
  const std::string& label() const { return label_; }

 private:
  Eval eval_;
  double norm_bound_;
  std::string label_;
};

/// m(T, A) = <T(A), D> for a fixed square matrix D; bound ||D||_2.
SuperopForm point_form(const ComplexMatrix& d);

}  // namespace bireg
