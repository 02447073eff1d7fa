#include "bireg/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>

#include <Eigen/Dense>
#include <Eigen/SVD>

namespace bireg {

namespace {

using EigenMat =
    Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

void require_finite(const std::vector<Complex>& entries, const char* what) {
  for (const Complex& z : entries) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
      throw InvalidInput(std::string(what) + ": non-finite entry");
  }
}

void require_shape(int rows, int cols) {
  if (rows < 0 || cols < 0 || (rows == 0) != (cols == 0))
    throw InvalidInput("matrix shape must be n x m with n, m >= 1, or empty");
}

Eigen::Map<const EigenMat> as_eigen(const ComplexMatrix& m) {
  return Eigen::Map<const EigenMat>(m.entries().data(), m.rows(), m.cols());
}

ComplexMatrix from_eigen(const EigenMat& e) {
  std::vector<Complex> entries(e.data(), e.data() + e.size());
  return ComplexMatrix(static_cast<int>(e.rows()), static_cast<int>(e.cols()),
                       std::move(entries));
}

}  // namespace

ComplexVector::ComplexVector(int dim) {
  if (dim <= 0) throw InvalidInput("vector dimension must be positive");
  entries_.assign(static_cast<std::size_t>(dim), Complex(0.0, 0.0));
}

ComplexVector::ComplexVector(std::vector<Complex> entries)
    : entries_(std::move(entries)) {
  if (entries_.empty()) throw InvalidInput("vector dimension must be positive");
  require_finite(entries_, "ComplexVector");
}

ComplexVector ComplexVector::basis(int k, int dim) {
  if (dim <= 0) throw InvalidInput("vector dimension must be positive");
  if (k < 0 || k >= dim) throw InvalidInput("basis index out of range");
  std::vector<Complex> e(static_cast<std::size_t>(dim), Complex(0.0, 0.0));
  e[static_cast<std::size_t>(k)] = Complex(1.0, 0.0);
  return ComplexVector(std::move(e));
}

Complex ComplexVector::operator[](int k) const {
  if (k < 0 || k >= dim()) throw InvalidInput("vector index out of range");
  return entries_[static_cast<std::size_t>(k)];
}

double norm(const ComplexVector& v) {
  double s = 0.0;
  for (const Complex& z : v.entries()) s += std::norm(z);
  return std::sqrt(s);
}

Complex inner(const ComplexVector& x, const ComplexVector& y) {
  if (x.dim() != y.dim())
    throw InvalidInput("inner: dimension mismatch");
  Complex s(0.0, 0.0);
  for (int k = 0; k < x.dim(); ++k) s += x[k] * std::conj(y[k]);
  return s;
}

ComplexVector operator+(const ComplexVector& x, const ComplexVector& y) {
  if (x.dim() != y.dim()) throw InvalidInput("vector sum: dimension mismatch");
  std::vector<Complex> e(x.entries().begin(), x.entries().end());
  for (int k = 0; k < y.dim(); ++k) e[static_cast<std::size_t>(k)] += y[k];
  return ComplexVector(std::move(e));
}

ComplexVector operator-(const ComplexVector& x, const ComplexVector& y) {
  if (x.dim() != y.dim())
    throw InvalidInput("vector difference: dimension mismatch");
  std::vector<Complex> e(x.entries().begin(), x.entries().end());
  for (int k = 0; k < y.dim(); ++k) e[static_cast<std::size_t>(k)] -= y[k];
  return ComplexVector(std::move(e));
}

ComplexVector operator*(Complex a, const ComplexVector& x) {
  std::vector<Complex> e(x.entries().begin(), x.entries().end());
  for (Complex& z : e) z *= a;
  return ComplexVector(std::move(e));
}

ComplexMatrix::ComplexMatrix(int rows, int cols) : rows_(rows), cols_(cols) {
  require_shape(rows, cols);
  entries_.assign(static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols),
                  Complex(0.0, 0.0));
}

ComplexMatrix::ComplexMatrix(int rows, int cols, std::vector<Complex> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
  require_shape(rows, cols);
  if (entries_.size() !=
      static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols))
    throw InvalidInput("matrix entries do not match its shape");
  require_finite(entries_, "ComplexMatrix");
}

ComplexMatrix ComplexMatrix::identity(int n) {
  ComplexMatrix m(n, n);
  for (int k = 0; k < n; ++k)
    m.entries_[static_cast<std::size_t>(k) * static_cast<std::size_t>(n) +
               static_cast<std::size_t>(k)] = Complex(1.0, 0.0);
  return m;
}

ComplexMatrix ComplexMatrix::unit(int r, int c, int rows, int cols) {
  ComplexMatrix m(rows, cols);
  if (r < 0 || r >= rows || c < 0 || c >= cols)
    throw InvalidInput("matrix unit index out of range");
  m.entries_[static_cast<std::size_t>(r) * static_cast<std::size_t>(cols) +
             static_cast<std::size_t>(c)] = Complex(1.0, 0.0);
  return m;
}

Complex ComplexMatrix::operator()(int r, int c) const {
  if (r < 0 || r >= rows_ || c < 0 || c >= cols_)
    throw InvalidInput("matrix index out of range");
  return entries_[static_cast<std::size_t>(r) * static_cast<std::size_t>(cols_) +
                  static_cast<std::size_t>(c)];
}

ComplexMatrix operator+(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (!a.same_shape(b)) throw InvalidInput("matrix sum: shape mismatch");
  std::vector<Complex> e(a.entries().begin(), a.entries().end());
  for (std::size_t k = 0; k < e.size(); ++k) e[k] += b.entries()[k];
  return ComplexMatrix(a.rows(), a.cols(), std::move(e));
}

ComplexMatrix operator-(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (!a.same_shape(b)) throw InvalidInput("matrix difference: shape mismatch");
  std::vector<Complex> e(a.entries().begin(), a.entries().end());
  for (std::size_t k = 0; k < e.size(); ++k) e[k] -= b.entries()[k];
  return ComplexMatrix(a.rows(), a.cols(), std::move(e));
}

ComplexMatrix operator*(Complex a, const ComplexMatrix& m) {
  std::vector<Complex> e(m.entries().begin(), m.entries().end());
  for (Complex& z : e) z *= a;
  return ComplexMatrix(m.rows(), m.cols(), std::move(e));
}

namespace {

struct Triplet {
  int r;
  int c;
  Complex v;
};

// Nonzero structure of a matrix: nonzeros listed row-major, plus per-row and
// per-column nonzero counts. A zero tolerance keeps the kernel exact: only
// entries that are identically 0.0 are skipped, so the sparse kernel sums
// exactly the same nonzero products, in the same (ascending-k) order, as the
// naive triple loop. Results are therefore bitwise independent of which path
// runs.
struct SparsePattern {
  std::vector<Triplet> nz;
  std::vector<int> row_count;
  std::vector<int> col_count;
};

SparsePattern pattern_of(const ComplexMatrix& m) {
  SparsePattern p;
  p.row_count.assign(static_cast<std::size_t>(m.rows()), 0);
  p.col_count.assign(static_cast<std::size_t>(m.cols()), 0);
  const std::span<const Complex> e = m.entries();
  for (int r = 0; r < m.rows(); ++r) {
    for (int c = 0; c < m.cols(); ++c) {
      const Complex z = e[static_cast<std::size_t>(r) *
                              static_cast<std::size_t>(m.cols()) +
                          static_cast<std::size_t>(c)];
      if (z == Complex(0.0, 0.0)) continue;
      p.nz.push_back({r, c, z});
      ++p.row_count[static_cast<std::size_t>(r)];
      ++p.col_count[static_cast<std::size_t>(c)];
    }
  }
  return p;
}

ComplexMatrix matmul_sparse(const ComplexMatrix& a, const ComplexMatrix& b,
                            const SparsePattern& pa, const SparsePattern& pb) {
  // Group B's nonzeros by row to pair with A's nonzeros by column index k.
  std::vector<std::size_t> b_row_start(static_cast<std::size_t>(b.rows()) + 1, 0);
  for (const Triplet& t : pb.nz)
    ++b_row_start[static_cast<std::size_t>(t.r) + 1];
  for (std::size_t k = 1; k < b_row_start.size(); ++k)
    b_row_start[k] += b_row_start[k - 1];

  std::vector<Complex> out(
      static_cast<std::size_t>(a.rows()) * static_cast<std::size_t>(b.cols()),
      Complex(0.0, 0.0));
  // pa.nz is row-major, so within each row of A the middle index k ascends;
  // accumulation order per output entry matches the naive k-loop.
  for (const Triplet& ta : pa.nz) {
    const std::size_t lo = b_row_start[static_cast<std::size_t>(ta.c)];
    const std::size_t hi = b_row_start[static_cast<std::size_t>(ta.c) + 1];
    Complex* out_row =
        out.data() + static_cast<std::size_t>(ta.r) * static_cast<std::size_t>(b.cols());
    for (std::size_t k = lo; k < hi; ++k) {
      const Triplet& tb = pb.nz[k];
      out_row[tb.c] += ta.v * tb.v;
    }
  }
  return ComplexMatrix(a.rows(), b.cols(), std::move(out));
}

}  // namespace

ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols() != b.rows()) throw InvalidInput("matmul: shape mismatch");
  const SparsePattern pa = pattern_of(a);
  const SparsePattern pb = pattern_of(b);
  // Exact cost of the index-based kernel: each nonzero A_{rk} touches every
  // nonzero in row k of B.
  std::size_t sparse_cost = 0;
  for (const Triplet& t : pa.nz)
    sparse_cost += static_cast<std::size_t>(pb.row_count[static_cast<std::size_t>(t.c)]);
  const std::size_t dense_cost = static_cast<std::size_t>(a.rows()) *
                                 static_cast<std::size_t>(a.cols()) *
                                 static_cast<std::size_t>(b.cols());
  if (sparse_cost * 8 <= dense_cost)
    return matmul_sparse(a, b, pa, pb);
  EigenMat prod = as_eigen(a) * as_eigen(b);
  return from_eigen(prod);
}

ComplexVector apply(const ComplexMatrix& a, const ComplexVector& v) {
  if (a.cols() != v.dim()) throw InvalidInput("apply: shape mismatch");
  std::vector<Complex> out(static_cast<std::size_t>(a.rows()), Complex(0.0, 0.0));
  for (int r = 0; r < a.rows(); ++r) {
    Complex s(0.0, 0.0);
    for (int c = 0; c < a.cols(); ++c) s += a(r, c) * v[c];
    out[static_cast<std::size_t>(r)] = s;
  }
  return ComplexVector(std::move(out));
}

ComplexMatrix adjoint(const ComplexMatrix& a) {
  return ComplexMatrix::build(
      a.cols(), a.rows(), [&](int r, int c) { return std::conj(a(c, r)); });
}

ComplexMatrix transpose(const ComplexMatrix& a) {
  return ComplexMatrix::build(a.cols(), a.rows(),
                              [&](int r, int c) { return a(c, r); });
}

ComplexMatrix conj_entries(const ComplexMatrix& a) {
  return ComplexMatrix::build(a.rows(), a.cols(),
                              [&](int r, int c) { return std::conj(a(r, c)); });
}

Complex trace(const ComplexMatrix& a) {
  if (a.rows() != a.cols()) throw InvalidInput("trace: matrix must be square");
  Complex s(0.0, 0.0);
  for (int k = 0; k < a.rows(); ++k) s += a(k, k);
  return s;
}

Complex hs_inner(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (!a.same_shape(b)) throw InvalidInput("hs_inner: shape mismatch");
  // Tr(B* A) = sum_{r,s} A_{rs} conj(B_{rs}); the entrywise form avoids the
  // product and is exact for the same reason.
  Complex s(0.0, 0.0);
  for (std::size_t k = 0; k < a.entries().size(); ++k)
    s += a.entries()[k] * std::conj(b.entries()[k]);
  return s;
}

double frobenius_norm(const ComplexMatrix& a) {
  double s = 0.0;
  for (const Complex& z : a.entries()) s += std::norm(z);
  return std::sqrt(s);
}

double max_abs_entry(const ComplexMatrix& a) {
  double m = 0.0;
  for (const Complex& z : a.entries()) m = std::max(m, std::abs(z));
  return m;
}

SvdResult svd(const ComplexMatrix& a) {
  if (a.empty()) throw InvalidInput("svd: empty matrix");
  // Divide-and-conquer SVD; it falls back to Jacobi iterations for small
  // blocks, and the reconstruction check below certifies the result either
  // way.
  Eigen::BDCSVD<EigenMat> solver(as_eigen(a),
                                 Eigen::ComputeThinU | Eigen::ComputeThinV);
  SvdResult result;
  result.u = from_eigen(solver.matrixU());
  result.v = from_eigen(solver.matrixV());
  result.sigma.values.assign(solver.singularValues().data(),
                             solver.singularValues().data() +
                                 solver.singularValues().size());
  // Certify the factorization before handing it out.
  EigenMat recon = solver.matrixU() *
                   solver.singularValues().asDiagonal().toDenseMatrix() *
                   solver.matrixV().adjoint();
  const double scale = frobenius_norm(a);
  const double residual = (as_eigen(a) - recon).norm() / (scale > 0.0 ? scale : 1.0);
  if (residual > 1e-10)
    throw NumericalFailure("svd: reconstruction residual too large", residual);
  return result;
}

double operator_norm(const ComplexMatrix& a) {
  const SvdResult s = svd(a);
  return s.sigma.values.empty() ? 0.0 : s.sigma.values.front();
}

}  // namespace bireg
