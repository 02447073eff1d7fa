#include "bireg/forms.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <utility>
#include <vector>

#include "bireg/operators.hpp"
#include "bireg/rng.hpp"

namespace bireg {

namespace {

void require_square(const ComplexMatrix& a, int dim, const char* what) {
  if (a.rows() != dim || a.cols() != dim)
    throw InvalidInput(std::string(what) + ": expected a " +
                       std::to_string(dim) + "x" + std::to_string(dim) +
                       " matrix");
}

}  // namespace

RieszMap::RieszMap(int dim, Action action, double norm_bound, std::string label)
    : dim_(dim),
      action_(std::move(action)),
      norm_bound_(norm_bound),
      label_(std::move(label)) {
  if (dim_ <= 0) throw InvalidInput("RieszMap: dimension must be positive");
  if (!(norm_bound_ >= 0.0))
    throw InvalidInput("RieszMap: norm bound must be nonnegative");
}

ComplexMatrix RieszMap::apply(const ComplexMatrix& a) const {
  require_square(a, dim_, "RieszMap");
  return action_(a);
}

RieszMap triangular_phi(int dim) {
  auto action = [](const ComplexMatrix& c) {
    return ComplexMatrix::build(c.rows(), c.cols(), [&](int i, int j) {
      return j <= i ? std::conj(c(i, j)) : Complex(0.0, 0.0);
    });
  };
  // Conjugating and zeroing entries can only shrink the HS norm.
  return RieszMap(dim, action, 1.0, "lower-triangular conjugation");
}

RieszMap conjugation_map(int dim) {
  auto action = [](const ComplexMatrix& a) { return conj_entries(a); };
  return RieszMap(dim, action, 1.0, "entrywise conjugation");
}

RieszMap random_riesz_dense(int dim, std::uint64_t seed) {
  if (dim > 8)
    throw InvalidInput("random_riesz_dense: dense representation is limited "
                       "to dim <= 8");
  Rng rng = Rng::derive(seed, 0x52d5);
  const int n2 = dim * dim;
  ComplexMatrix m = ComplexMatrix::build(
      n2, n2, [&](int, int) { return rng.normal_complex(); });
  const double top = operator_norm(m);
  if (top > 0.0) m = Complex(0.95 / top, 0.0) * m;

  // A -> unvec(M vec(conj A)) against row-major vectorization. The
  // conjugation in front makes the whole map conjugate-linear; the bound
  // 0.95 is the exact operator norm of M on the vectorized space, which
  // carries the HS norm.
  auto action = [m, dim](const ComplexMatrix& a) {
    std::vector<Complex> v;
    v.reserve(static_cast<std::size_t>(dim) * static_cast<std::size_t>(dim));
    for (const Complex& z : a.entries()) v.push_back(std::conj(z));
    ComplexVector w = apply(m, ComplexVector(std::move(v)));
    std::vector<Complex> out(w.entries().begin(), w.entries().end());
    return ComplexMatrix(dim, dim, std::move(out));
  };
  return RieszMap(dim, action, 0.95, "random dense conjugate-linear map");
}

RieszMap random_riesz_weighted(int dim, std::uint64_t seed) {
  Rng rng = Rng::derive(seed, 0x52d6);
  constexpr int kRankTerms = 3;
  const int block = std::min(dim, 16);

  // Entrywise weight with max modulus exactly 0.6.
  ComplexMatrix g = ComplexMatrix::build(dim, dim, [&](int, int) {
    return Complex(0.2, 0.0) + Complex(0.8, 0.0) * rng.unit_disk();
  });
  const double g_max = max_abs_entry(g);
  g = Complex(0.6 / g_max, 0.0) * g;

  // Finite-rank terms <Y_k, A> Z_k with decaying entries supported on the
  // leading `block` x `block` corner, each pair scaled so
  // ||Y_k||_2 ||Z_k||_2 = 0.1.
  std::vector<ComplexMatrix> ys;
  std::vector<ComplexMatrix> zs;
  for (int k = 0; k < kRankTerms; ++k) {
    auto decayed = [&]() {
      return ComplexMatrix::build(dim, dim, [&](int r, int s) {
        if (r >= block || s >= block) return Complex(0.0, 0.0);
        return rng.unit_disk() * std::exp(-0.6 * static_cast<double>(r + s));
      });
    };
    ComplexMatrix y = decayed();
    ComplexMatrix z = decayed();
    const double denom = frobenius_norm(y) * frobenius_norm(z);
    const double rescale = denom > 0.0 ? std::sqrt(0.1 / denom) : 0.0;
    ys.push_back(Complex(rescale, 0.0) * y);
    zs.push_back(Complex(rescale, 0.0) * z);
  }

  // ||G * conj(A)||_2 <= max|G| ||A||_2 and |<Y_k, A>| <= ||Y_k||_2 ||A||_2,
  // so the triangle inequality certifies 0.6 + 3 * 0.1.
  const double bound = 0.9;
  // Grid evaluation applies this map once per cell; the loops below fuse the
  // conjugation into the weight pass and touch only the support block for
  // the finite-rank terms.
  auto action = [g, ys, zs, block, dim](const ComplexMatrix& a) {
    std::vector<Complex> out(g.entries().begin(), g.entries().end());
    const std::span<const Complex> ae = a.entries();
    for (std::size_t k = 0; k < out.size(); ++k) out[k] *= std::conj(ae[k]);
    for (std::size_t k = 0; k < ys.size(); ++k) {
      const std::span<const Complex> ye = ys[k].entries();
      const std::span<const Complex> ze = zs[k].entries();
      Complex coef(0.0, 0.0);
      for (int r = 0; r < block; ++r)
        for (int s = 0; s < block; ++s) {
          const std::size_t idx =
              static_cast<std::size_t>(r) * static_cast<std::size_t>(dim) +
              static_cast<std::size_t>(s);
          coef += ye[idx] * std::conj(ae[idx]);
        }
      for (int r = 0; r < block; ++r)
        for (int s = 0; s < block; ++s) {
          const std::size_t idx =
              static_cast<std::size_t>(r) * static_cast<std::size_t>(dim) +
              static_cast<std::size_t>(s);
          out[idx] += coef * ze[idx];
        }
    }
    return ComplexMatrix(a.rows(), a.cols(), std::move(out));
  };
  return RieszMap(dim, action, bound, "random weighted conjugate-linear map");
}

BilinearForm::BilinearForm(Eval eval, double norm_bound, std::string label)
    : eval_(std::move(eval)),
      norm_bound_(norm_bound),
      label_(std::move(label)) {
  if (!(norm_bound_ >= 0.0))
    throw InvalidInput("BilinearForm: norm bound must be nonnegative");
}

BilinearForm riesz_form(const RieszMap& phi) {
  auto eval = [phi](const ComplexMatrix& s, const ComplexMatrix& t) {
    if (t.rows() != phi.dim() || t.cols() != phi.dim())
      throw InvalidInput("riesz_form: second argument has wrong shape");
    return hs_inner(t, phi.apply(s));
  };
  return BilinearForm(eval, phi.norm_bound(), "<T, phi(S)> with phi = " + phi.label());
}

Superoperator::Superoperator(int dim, Action action, double norm_bound,
                             std::string label)
    : dim_(dim),
      action_(std::move(action)),
      norm_bound_(norm_bound),
      label_(std::move(label)) {
  if (dim_ <= 0) throw InvalidInput("Superoperator: dimension must be positive");
  if (!(norm_bound_ >= 0.0))
    throw InvalidInput("Superoperator: norm bound must be nonnegative");
}

ComplexMatrix Superoperator::apply(const ComplexMatrix& a) const {
  require_square(a, dim_, "Superoperator");
  return action_(a);
}

Superoperator identity_superop(int dim) {
  return Superoperator(dim, [](const ComplexMatrix& a) { return a; }, 1.0,
                       "identity");
}

Superoperator zero_superop(int dim) {
  return Superoperator(
      dim, [dim](const ComplexMatrix&) { return ComplexMatrix(dim, dim); }, 0.0,
      "zero");
}

Superoperator superop_from_vector_action(
    const ComplexMatrix& s, std::optional<double> certified_norm_bound) {
  if (s.rows() != s.cols())
    throw InvalidInput("superop_from_vector_action: matrix must be square");
  if (certified_norm_bound && !(*certified_norm_bound >= 0.0))
    throw InvalidInput(
        "superop_from_vector_action: certified bound must be nonnegative");
  const int dim = s.rows();
  // ||theta_{S(A e1), e1}||_2 = ||S(A e1)|| <= ||S||_op ||A e1|| <= ||S||_op ||A||_2.
  const double bound =
      certified_norm_bound ? *certified_norm_bound : operator_norm(s);
  // Shared immutable state keeps copies of this superoperator (and of
  // compositions built from it) cheap: grid evaluation copies the action
  // once per cell.
  struct State {
    ComplexMatrix s;
    ComplexVector e1;
  };
  auto state = std::make_shared<const State>(
      State{s, ComplexVector::basis(0, dim)});
  auto action = [state](const ComplexMatrix& a) {
    return rank_one(apply(state->s, apply(a, state->e1)), state->e1);
  };
  return Superoperator(dim, action, bound, "A -> theta_{S(A e1), e1}");
}

Superoperator compose_superops(const Superoperator& t1, const Superoperator& t2) {
  if (t1.dim() != t2.dim())
    throw InvalidInput("compose_superops: dimension mismatch");
  auto action = [t1, t2](const ComplexMatrix& a) { return t1.apply(t2.apply(a)); };
  return Superoperator(t1.dim(), action, t1.norm_bound() * t2.norm_bound(),
                       t1.label() + " after " + t2.label());
}

ComplexMatrix materialize(const Superoperator& t) {
  if (t.dim() > 8)
    throw InvalidInput("materialize: limited to dim <= 8");
  const int dim = t.dim();
  const int n2 = dim * dim;
  ComplexMatrix out(n2, n2);
  std::vector<Complex> e(out.entries().begin(), out.entries().end());
  for (int col = 0; col < n2; ++col) {
    ComplexMatrix image = t.apply(ComplexMatrix::unit(col / dim, col % dim, dim, dim));
    for (int row = 0; row < n2; ++row)
      e[static_cast<std::size_t>(row) * static_cast<std::size_t>(n2) +
        static_cast<std::size_t>(col)] = image(row / dim, row % dim);
  }
  return ComplexMatrix(n2, n2, std::move(e));
}

SuperopForm::SuperopForm(Eval eval, double norm_bound, std::string label)
    : eval_(std::move(eval)),
      norm_bound_(norm_bound),
      label_(std::move(label)) {
  if (!(norm_bound_ >= 0.0))
    throw InvalidInput("SuperopForm: norm bound must be nonnegative");
}

SuperopForm point_form(const ComplexMatrix& d) {
  if (d.rows() != d.cols()) throw InvalidInput("point_form: D must be square");
  const double bound = frobenius_norm(d);
  auto eval = [d](const Superoperator& t, const ComplexMatrix& a) {
    if (t.dim() != d.rows())
      throw InvalidInput("point_form: superoperator dimension mismatch");
    return hs_inner(t.apply(a), d);
  };
  return SuperopForm(eval, bound, "<T(A), D>");
}

}  // namespace bireg
