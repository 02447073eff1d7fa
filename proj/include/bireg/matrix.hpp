#pragma once

#include <complex>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "bireg/errors.hpp"

namespace bireg {

using Complex = std::complex<double>;

/// Dense complex vector. Value-semantic and immutable through the public
/// interface; entries are validated to be finite at construction.
class ComplexVector {
 public:
  ComplexVector() = default;
  explicit ComplexVector(int dim);
  explicit ComplexVector(std::vector<Complex> entries);

  /// Standard basis vector e_k (0-based) of the given dimension.
  static ComplexVector basis(int k, int dim);

  int dim() const { return static_cast<int>(entries_.size()); }
  Complex operator[](int k) const;
  std::span<const Complex> entries() const { return entries_; }

 private:
  std::vector<Complex> entries_;
};

double norm(const ComplexVector& v);
/// <x, y> = sum_k x_k conj(y_k); linear in the first slot.
Complex inner(const ComplexVector& x, const ComplexVector& y);
ComplexVector operator+(const ComplexVector& x, const ComplexVector& y);
ComplexVector operator-(const ComplexVector& x, const ComplexVector& y);
ComplexVector operator*(Complex a, const ComplexVector& x);

/// Dense complex matrix, row-major. The universal carrier for truncated
/// Schatten-class operators. Value-semantic; operations return fresh
/// results, so values are safely shareable across threads.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  ComplexMatrix(int rows, int cols);  // zero matrix
  ComplexMatrix(int rows, int cols, std::vector<Complex> entries);

  static ComplexMatrix identity(int n);
  /// Matrix unit E_{rc} (0-based indices).
  static ComplexMatrix unit(int r, int c, int rows, int cols);

  template <typename F>
  static ComplexMatrix build(int rows, int cols, F&& f) {
    std::vector<Complex> e;
    e.reserve(static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols));
    for (int r = 0; r < rows; ++r)
      for (int c = 0; c < cols; ++c) e.push_back(f(r, c));
    return ComplexMatrix(rows, cols, std::move(e));
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  bool empty() const { return rows_ == 0; }
  bool same_shape(const ComplexMatrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_;
  }

  Complex operator()(int r, int c) const;
  std::span<const Complex> entries() const { return entries_; }

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<Complex> entries_;
};

ComplexMatrix operator+(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix operator-(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix operator*(Complex a, const ComplexMatrix& m);

/// Standard matrix product. Dispatches to an index-based kernel when the
/// operands are sparse enough for it to win; dense operands go through a
/// BLAS-grade path. Either way the result is a pure function of the inputs.
ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexVector apply(const ComplexMatrix& a, const ComplexVector& v);
/// (adjoint A)_{rs} = conj(A_{sr}).
ComplexMatrix adjoint(const ComplexMatrix& a);
ComplexMatrix transpose(const ComplexMatrix& a);
/// Entrywise conjugate.
ComplexMatrix conj_entries(const ComplexMatrix& a);
Complex trace(const ComplexMatrix& a);
/// Hilbert-Schmidt inner product <A, B> = Tr(B* A); linear in A.
Complex hs_inner(const ComplexMatrix& a, const ComplexMatrix& b);
double frobenius_norm(const ComplexMatrix& a);
double max_abs_entry(const ComplexMatrix& a);

/// Non-increasing, nonnegative singular values.
struct SingularSpectrum {
  std::vector<double> values;
};

struct SvdResult {
  ComplexMatrix u;        // orthonormal columns
  SingularSpectrum sigma; // min(rows, cols) values, non-increasing
  ComplexMatrix v;        // orthonormal columns; A = U diag(sigma) V*
};

/// Thin SVD. Throws NumericalFailure (carrying the relative residual) if
/// the reconstruction ||A - U diag(sigma) V*||_F exceeds 1e-10 ||A||_F.
SvdResult svd(const ComplexMatrix& a);

/// Largest singular value.
double operator_norm(const ComplexMatrix& a);

}  // namespace bireg
