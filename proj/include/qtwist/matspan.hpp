#pragma once

// Complex matrices, Hilbert-Schmidt spans, *-algebra closures, commutants and
// relation-transport isomorphism search.
//
// Algebra elements are sparse operators (Eigen::SparseMatrix); spans are
// stored compressed to the union of their supports, which keeps the large
// tensor-product ambients of the crossed-product constructions cheap.

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <unsupported/Eigen/KroneckerProduct>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace qtwist {

using Index = Eigen::Index;

template <typename Scalar>
using DenseMatrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using DenseVector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
template <typename Scalar>
using Operator = Eigen::SparseMatrix<Scalar>;

using cd = std::complex<double>;
using CMatrix = DenseMatrix<cd>;
using CVector = DenseVector<cd>;
using COperator = Operator<cd>;

/// Thresholds shared by every rank decision and identity check.
struct Tolerance {
  double eps_rank = 1e-9;  // relative singular-value cut-off
  double eps_eq = 1e-8;    // absolute Frobenius residual for identities

  void validate() const {
    if (!(eps_rank > 0 && eps_rank < 1e-3) || !(eps_eq > 0 && eps_eq < 1e-3)) {
      throw std::invalid_argument("tolerances must lie in (0, 1e-3)");
    }
  }
};

// ---------------------------------------------------------------------------
// Elementary operator helpers
// ---------------------------------------------------------------------------

template <typename Scalar>
Operator<Scalar> pruned(const Operator<Scalar>& x) {
  using Real = typename Eigen::NumTraits<Scalar>::Real;
  Real peak = 0;
  for (Index k = 0; k < x.outerSize(); ++k)
    for (typename Operator<Scalar>::InnerIterator it(x, k); it; ++it)
      peak = std::max(peak, std::abs(it.value()));
  Operator<Scalar> out = x;
  const Real cut = peak * Real(1e-15);
  out.prune([cut](Index, Index, const Scalar& v) { return std::abs(v) > cut; });
  out.makeCompressed();
  return out;
}

template <typename Scalar>
Operator<Scalar> to_operator(const DenseMatrix<Scalar>& m) {
  Operator<Scalar> out = m.sparseView();
  return pruned(out);
}

template <typename Scalar>
DenseMatrix<Scalar> to_dense(const Operator<Scalar>& x) {
  return DenseMatrix<Scalar>(x);
}

template <typename Scalar = cd>
Operator<Scalar> identity(Index n) {
  Operator<Scalar> out(n, n);
  out.setIdentity();
  return out;
}

template <typename Scalar = cd>
Operator<Scalar> matrix_unit(Index rows, Index cols, Index i, Index j) {
  Operator<Scalar> out(rows, cols);
  out.insert(i, j) = Scalar(1);
  out.makeCompressed();
  return out;
}

template <typename Scalar>
Operator<Scalar> adjoint(const Operator<Scalar>& x) {
  return Operator<Scalar>(x.adjoint());
}

template <typename Scalar>
Operator<Scalar> product(const Operator<Scalar>& a, const Operator<Scalar>& b) {
  Operator<Scalar> out = a * b;
  return pruned(out);
}

template <typename Scalar>
Operator<Scalar> product(const Operator<Scalar>& a, const Operator<Scalar>& b,
                         const Operator<Scalar>& c) {
  return product(product(a, b), c);
}

template <typename Scalar>
Operator<Scalar> kron(const Operator<Scalar>& a, const Operator<Scalar>& b) {
  Operator<Scalar> out = Eigen::kroneckerProduct(a, b);
  out.makeCompressed();
  return out;
}

template <typename Scalar>
Operator<Scalar> kron(const Operator<Scalar>& a, const Operator<Scalar>& b,
                      const Operator<Scalar>& c) {
  return kron(kron(a, b), c);
}

template <typename Scalar>
Operator<Scalar> commutator(const Operator<Scalar>& a, const Operator<Scalar>& b) {
  Operator<Scalar> out = a * b - b * a;
  return pruned(out);
}

template <typename Scalar>
typename Eigen::NumTraits<Scalar>::Real distance(const Operator<Scalar>& a,
                                                 const Operator<Scalar>& b) {
  return Operator<Scalar>(a - b).norm();
}

/// Largest singular value; intended for the small operators of Weyl pairs.
template <typename Scalar>
typename Eigen::NumTraits<Scalar>::Real operator_norm(const Operator<Scalar>& x) {
  if (x.nonZeros() == 0) return 0;
  DenseMatrix<Scalar> d(x);
  Eigen::JacobiSVD<DenseMatrix<Scalar>> svd(d);
  return svd.singularValues()(0);
}

template <typename Scalar>
bool all_finite(const Operator<Scalar>& x) {
  for (Index k = 0; k < x.outerSize(); ++k)
    for (typename Operator<Scalar>::InnerIterator it(x, k); it; ++it)
      if (!std::isfinite(std::real(it.value())) || !std::isfinite(std::imag(it.value())))
        return false;
  return true;
}

/// Swaps the two tensor legs of an operator on C^a ⊗ C^b.
template <typename Scalar = cd>
Operator<Scalar> flip(Index a, Index b) {
  std::vector<Eigen::Triplet<Scalar>> t;
  t.reserve(static_cast<std::size_t>(a * b));
  for (Index i = 0; i < a; ++i)
    for (Index j = 0; j < b; ++j) t.emplace_back(j * a + i, i * b + j, Scalar(1));
  Operator<Scalar> out(a * b, a * b);
  out.setFromTriplets(t.begin(), t.end());
  return out;
}

// ---------------------------------------------------------------------------
// Subspace
// ---------------------------------------------------------------------------

/// Linear subspace of M_n with a Hilbert-Schmidt orthonormal basis.
///
/// Basis vectors are column-major vectorisations restricted to `support()`,
/// the sorted set of linear positions (i + j n) where some basis element may
/// be non-zero.  Every element of the span vanishes outside the support.
template <typename Scalar>
class BasicSubspace {
 public:
  using Real = typename Eigen::NumTraits<Scalar>::Real;
  using Op = Operator<Scalar>;

  BasicSubspace() = default;
  explicit BasicSubspace(Index ambient_dim) : n_(ambient_dim), q_(0, 0) {}

  Index ambient_dim() const { return n_; }
  Index dimension() const { return q_.cols(); }
  const std::vector<Index>& support() const { return support_; }
  const DenseMatrix<Scalar>& frame() const { return q_; }

  Op element(Index i) const { return combine(DenseVector<Scalar>::Unit(dimension(), i)); }

  std::vector<Op> basis() const {
    std::vector<Op> out;
    out.reserve(static_cast<std::size_t>(dimension()));
    for (Index i = 0; i < dimension(); ++i) out.push_back(element(i));
    return out;
  }

  /// Coordinates of the orthogonal projection of x in the orthonormal basis.
  DenseVector<Scalar> coordinates(const Op& x) const {
    check_shape(x);
    DenseVector<Scalar> c = DenseVector<Scalar>::Zero(dimension());
    if (dimension() == 0) return c;
    for_each_entry(x, [&](Index row, const Scalar& v) { c += q_.row(row).adjoint() * v; },
                   [](const Scalar&) {});
    return c;
  }

  Op combine(const DenseVector<Scalar>& coords) const {
    Op out(n_, n_);
    if (dimension() == 0) return out;
    DenseVector<Scalar> v = q_ * coords;
    std::vector<Eigen::Triplet<Scalar>> t;
    Real peak = v.size() ? v.cwiseAbs().maxCoeff() : Real(0);
    const Real cut = peak * Real(1e-15);
    for (std::size_t r = 0; r < support_.size(); ++r) {
      const Scalar s = v(static_cast<Index>(r));
      if (std::abs(s) > cut) t.emplace_back(support_[r] % n_, support_[r] / n_, s);
    }
    out.setFromTriplets(t.begin(), t.end());
    return out;
  }

  /// ‖Q·coords − y‖_F, accounting for the part of y outside the support.
  Real distance_to(const DenseVector<Scalar>& coords, const Op& y) const {
    check_shape(y);
    DenseVector<Scalar> v = dimension() ? DenseVector<Scalar>(q_ * coords)
                                        : DenseVector<Scalar>::Zero(Index(support_.size()));
    Real outside = 0;
    for_each_entry(y, [&](Index row, const Scalar& s) { v(row) -= s; },
                   [&](const Scalar& s) { outside += std::norm(s); });
    return std::sqrt(v.squaredNorm() + outside);
  }

  /// Distance from x to the subspace.
  Real residual(const Op& x) const { return distance_to(coordinates(x), x); }

  bool contains(const Op& x, const Tolerance& tol) const { return residual(x) < tol.eps_eq; }

  /// Vectorises x on the support; the norm of the discarded part is returned.
  DenseVector<Scalar> gather(const Op& x, Real* outside_norm = nullptr) const {
    DenseVector<Scalar> v = DenseVector<Scalar>::Zero(Index(support_.size()));
    Real outside = 0;
    for_each_entry(x, [&](Index row, const Scalar& s) { v(row) += s; },
                   [&](const Scalar& s) { outside += std::norm(s); });
    if (outside_norm) *outside_norm = std::sqrt(outside);
    return v;
  }

  // Construction is reserved for the span builders below.
  static BasicSubspace from_parts(Index n, std::vector<Index> support, DenseMatrix<Scalar> q) {
    BasicSubspace s(n);
    s.support_ = std::move(support);
    s.q_ = std::move(q);
    return s;
  }

 private:
  void check_shape(const Op& x) const {
    if (x.rows() != n_ || x.cols() != n_)
      throw std::invalid_argument("operator shape does not match subspace ambient");
  }

  template <typename Inside, typename Outside>
  void for_each_entry(const Op& x, Inside&& inside, Outside&& outside) const {
    for (Index k = 0; k < x.outerSize(); ++k) {
      for (typename Op::InnerIterator it(x, k); it; ++it) {
        const Index pos = it.row() + it.col() * n_;
        auto found = std::lower_bound(support_.begin(), support_.end(), pos);
        if (found != support_.end() && *found == pos)
          inside(Index(found - support_.begin()), it.value());
        else
          outside(it.value());
      }
    }
  }

  Index n_ = 0;
  std::vector<Index> support_;
  DenseMatrix<Scalar> q_;
};

/// Subspace known to be a *-subalgebra of M_n.
template <typename Scalar>
struct BasicAlgebraBasis {
  BasicSubspace<Scalar> subspace;
  bool contains_identity = false;

  Index dimension() const { return subspace.dimension(); }
  Index ambient_dim() const { return subspace.ambient_dim(); }
};

using Subspace = BasicSubspace<cd>;
using AlgebraBasis = BasicAlgebraBasis<cd>;

namespace detail {

template <typename Scalar>
std::vector<Index> union_support(Index n, std::span<const Operator<Scalar>> xs,
                                 const std::vector<Index>& seed = {}) {
  std::vector<Index> pos = seed;
  for (const auto& x : xs)
    for (Index k = 0; k < x.outerSize(); ++k)
      for (typename Operator<Scalar>::InnerIterator it(x, k); it; ++it)
        if (it.value() != Scalar(0)) pos.push_back(it.row() + it.col() * n);
  std::sort(pos.begin(), pos.end());
  pos.erase(std::unique(pos.begin(), pos.end()), pos.end());
  return pos;
}

template <typename Scalar>
DenseMatrix<Scalar> gather_columns(const std::vector<Index>& support, Index n,
                                   std::span<const Operator<Scalar>> xs) {
  DenseMatrix<Scalar> m = DenseMatrix<Scalar>::Zero(Index(support.size()), Index(xs.size()));
  for (std::size_t c = 0; c < xs.size(); ++c) {
    const auto& x = xs[c];
    for (Index k = 0; k < x.outerSize(); ++k)
      for (typename Operator<Scalar>::InnerIterator it(x, k); it; ++it) {
        const Index pos = it.row() + it.col() * n;
        auto f = std::lower_bound(support.begin(), support.end(), pos);
        if (f != support.end() && *f == pos) m(Index(f - support.begin()), Index(c)) += it.value();
      }
  }
  return m;
}

template <typename Scalar>
typename Eigen::NumTraits<Scalar>::Real max_column_norm(const DenseMatrix<Scalar>& m) {
  typename Eigen::NumTraits<Scalar>::Real best = 0;
  for (Index c = 0; c < m.cols(); ++c) best = std::max(best, m.col(c).norm());
  return best;
}

// Column-pivoted classical Gram-Schmidt with reorthogonalisation.  Starts
// from an existing orthonormal block `q` and appends normalised residuals of
// the columns of `m` until every remaining residual is at most `cut`.
// Among near-equal residuals the lowest column index wins, so orthonormal
// inputs come back unchanged and in input order.
template <typename Scalar>
DenseMatrix<Scalar> pivoted_gram_schmidt(DenseMatrix<Scalar> q, DenseMatrix<Scalar> m,
                                         typename Eigen::NumTraits<Scalar>::Real cut) {
  using Real = typename Eigen::NumTraits<Scalar>::Real;
  if (q.cols() > 0) {
    for (int pass = 0; pass < 2; ++pass) m -= q * (q.adjoint() * m);
  }
  std::vector<Real> norms(static_cast<std::size_t>(m.cols()));
  std::vector<DenseVector<Scalar>> added;
  std::vector<bool> used(static_cast<std::size_t>(m.cols()), false);
  while (true) {
    Real best = 0;
    for (Index c = 0; c < m.cols(); ++c) {
      norms[std::size_t(c)] = used[std::size_t(c)] ? Real(0) : m.col(c).norm();
      best = std::max(best, norms[std::size_t(c)]);
    }
    if (!(best > cut)) break;
    Index pick = 0;
    for (Index c = 0; c < m.cols(); ++c)
      if (norms[std::size_t(c)] >= best * Real(1 - 1e-10)) {
        pick = c;
        break;
      }
    used[std::size_t(pick)] = true;
    DenseVector<Scalar> v = m.col(pick) / norms[std::size_t(pick)];
    // second pass against the new direction set keeps the basis orthonormal
    if (q.cols() > 0) v -= q * (q.adjoint() * v);
    for (const auto& a : added) v -= a * a.dot(v);
    v.normalize();
    m -= v * (v.adjoint() * m);
    added.push_back(std::move(v));
  }
  DenseMatrix<Scalar> out(q.rows(), q.cols() + Index(added.size()));
  if (q.cols() > 0) out.leftCols(q.cols()) = q;
  for (std::size_t i = 0; i < added.size(); ++i) out.col(q.cols() + Index(i)) = added[i];
  return out;
}

template <typename Scalar>
void require_same_shape(std::span<const Operator<Scalar>> xs, Index n) {
  for (const auto& x : xs)
    if (x.rows() != n || x.cols() != n)
      throw std::invalid_argument("matrices in a span must share one square shape");
}

template <typename Scalar>
DenseMatrix<Scalar> embed_rows(const DenseMatrix<Scalar>& q, const std::vector<Index>& from,
                               const std::vector<Index>& to) {
  DenseMatrix<Scalar> out = DenseMatrix<Scalar>::Zero(Index(to.size()), q.cols());
  std::size_t j = 0;
  for (std::size_t i = 0; i < from.size(); ++i) {
    while (to[j] != from[i]) ++j;
    out.row(Index(j)) = q.row(Index(i));
  }
  return out;
}

}  // namespace detail

/// Singular values of the matrix whose columns are the vectorised inputs.
template <typename Scalar>
DenseVector<typename Eigen::NumTraits<Scalar>::Real> span_singular_values(
    Index n, std::span<const Operator<Scalar>> vectors) {
  detail::require_same_shape(vectors, n);
  auto support = detail::union_support(n, vectors);
  DenseMatrix<Scalar> m = detail::gather_columns(support, n, vectors);
  if (m.size() == 0) return {};
  if (m.rows() > m.cols()) {
    Eigen::HouseholderQR<DenseMatrix<Scalar>> qr(m);
    DenseMatrix<Scalar> r = qr.matrixQR().topRows(m.cols()).template triangularView<Eigen::Upper>();
    return Eigen::JacobiSVD<DenseMatrix<Scalar>>(r).singularValues();
  }
  return Eigen::JacobiSVD<DenseMatrix<Scalar>>(m).singularValues();
}

/// Numerical rank: singular values above eps_rank relative to the largest.
template <typename Scalar>
Index span_rank(Index n, std::span<const Operator<Scalar>> vectors, const Tolerance& tol) {
  auto s = span_singular_values<Scalar>(n, vectors);
  if (s.size() == 0 || s(0) == 0) return 0;
  Index r = 0;
  for (Index i = 0; i < s.size(); ++i)
    if (s(i) > tol.eps_rank * s(0)) ++r;
  return r;
}

/// Hilbert-Schmidt orthonormal basis of the linear span of `vectors`.
template <typename Scalar>
BasicSubspace<Scalar> span_basis(Index n, std::span<const Operator<Scalar>> vectors,
                                 const Tolerance& tol) {
  using Real = typename Eigen::NumTraits<Scalar>::Real;
  detail::require_same_shape(vectors, n);
  auto support = detail::union_support(n, vectors);
  DenseMatrix<Scalar> m = detail::gather_columns(support, n, vectors);
  const Real scale = detail::max_column_norm(m);
  if (scale == 0) return BasicSubspace<Scalar>(n);
  // Tall inputs are first reduced to m = Q_h R by a blocked Householder QR;
  // Gram-Schmidt on R gives the same pivots and span at a fraction of the cost.
  DenseMatrix<Scalar> qh, r = m;
  if (m.rows() > m.cols()) {
    Eigen::HouseholderQR<DenseMatrix<Scalar>> qr(m);
    r = qr.matrixQR().topRows(m.cols()).template triangularView<Eigen::Upper>();
    qh = qr.householderQ() * DenseMatrix<Scalar>::Identity(m.rows(), m.cols());
  }
  DenseMatrix<Scalar> q = detail::pivoted_gram_schmidt(DenseMatrix<Scalar>(r.rows(), 0), r,
                                                       Real(tol.eps_rank) * scale);
  // Confirm the rank against the singular values of the span; Gram-Schmidt
  // pivots only approximate them in ill-conditioned cases.
  Eigen::JacobiSVD<DenseMatrix<Scalar>> svd(r, Eigen::ComputeThinU);
  const auto& s = svd.singularValues();
  Index rank = 0;
  for (Index i = 0; i < s.size(); ++i)
    if (s(0) > 0 && s(i) > tol.eps_rank * s(0)) ++rank;
  if (rank != q.cols()) q = svd.matrixU().leftCols(rank);
  if (qh.size()) q = qh * q;
  return BasicSubspace<Scalar>::from_parts(n, std::move(support), std::move(q));
}

template <typename Scalar>
BasicSubspace<Scalar> span_basis(std::span<const Operator<Scalar>> vectors, const Tolerance& tol) {
  if (vectors.empty()) return BasicSubspace<Scalar>(0);
  return span_basis<Scalar>(vectors.front().rows(), vectors, tol);
}

template <typename Scalar>
BasicSubspace<Scalar> span_basis(const std::vector<Operator<Scalar>>& vectors,
                                 const Tolerance& tol) {
  return span_basis<Scalar>(std::span<const Operator<Scalar>>(vectors), tol);
}

/// Enlarges `base` by the span of `extra`; residuals below eps_rank times the
/// largest extra norm (or `scale`, if larger) are treated as zero.
template <typename Scalar>
BasicSubspace<Scalar> extend_span(const BasicSubspace<Scalar>& base,
                                  std::span<const Operator<Scalar>> extra, const Tolerance& tol,
                                  typename Eigen::NumTraits<Scalar>::Real scale = 0) {
  using Real = typename Eigen::NumTraits<Scalar>::Real;
  const Index n = base.ambient_dim();
  detail::require_same_shape(extra, n);
  auto support = detail::union_support(n, extra, base.support());
  DenseMatrix<Scalar> q = detail::embed_rows(base.frame(), base.support(), support);
  DenseMatrix<Scalar> m = detail::gather_columns(support, n, extra);
  const Real cut = Real(tol.eps_rank) * std::max(scale, detail::max_column_norm(m));
  if (cut == 0) return base;
  q = detail::pivoted_gram_schmidt(std::move(q), std::move(m), cut);
  return BasicSubspace<Scalar>::from_parts(n, std::move(support), std::move(q));
}

/// Mutual containment of the two spans within eps_eq.
template <typename Scalar>
bool subspace_equal(const BasicSubspace<Scalar>& s, const BasicSubspace<Scalar>& t,
                    const Tolerance& tol) {
  if (s.ambient_dim() != t.ambient_dim())
    throw std::invalid_argument("subspace_equal: ambient dimensions differ");
  if (s.dimension() != t.dimension()) return false;
  for (Index i = 0; i < s.dimension(); ++i)
    if (t.residual(s.element(i)) >= tol.eps_eq) return false;
  for (Index i = 0; i < t.dimension(); ++i)
    if (s.residual(t.element(i)) >= tol.eps_eq) return false;
  return true;
}

/// True when every element of `s` lies in `t` within eps_eq.
template <typename Scalar>
bool subspace_contained(const BasicSubspace<Scalar>& s, const BasicSubspace<Scalar>& t,
                        const Tolerance& tol) {
  for (Index i = 0; i < s.dimension(); ++i)
    if (t.residual(s.element(i)) >= tol.eps_eq) return false;
  return true;
}

/// Span of all products x·y with x ∈ xs, y ∈ ys.
template <typename Scalar>
BasicSubspace<Scalar> product_span(Index n, std::span<const Operator<Scalar>> xs,
                                   std::span<const Operator<Scalar>> ys, const Tolerance& tol) {
  std::vector<Operator<Scalar>> prods;
  prods.reserve(xs.size() * ys.size());
  for (const auto& x : xs)
    for (const auto& y : ys) prods.push_back(product(x, y));
  return span_basis<Scalar>(n, prods, tol);
}

/// Smallest *-closed, product-closed subspace containing the generators.
///
/// Starts from span(G ∪ G*) and repeatedly adds products b·g of the newest
/// basis elements b with every g ∈ G ∪ G* (lexicographic order) until the
/// dimension stabilises.  A subspace S ⊇ G with S·G ⊆ S is spanned by words
/// in G ∪ G*, so it is closed under products and adjoints.
template <typename Scalar>
BasicAlgebraBasis<Scalar> multiplicative_closure(std::span<const Operator<Scalar>> generators,
                                                 const Tolerance& tol) {
  using Real = typename Eigen::NumTraits<Scalar>::Real;
  if (generators.empty()) return {BasicSubspace<Scalar>(0), false};
  const Index n = generators.front().rows();
  detail::require_same_shape(generators, n);
  std::vector<Operator<Scalar>> gens(generators.begin(), generators.end());
  for (const auto& g : generators) gens.push_back(adjoint(g));
  Real scale = 0;
  for (const auto& g : gens) scale = std::max(scale, Real(g.norm()));
  BasicSubspace<Scalar> s = span_basis<Scalar>(n, gens, tol);
  Index fresh_from = 0;
  while (true) {
    const Index before = s.dimension();
    std::vector<Operator<Scalar>> candidates;
    for (Index i = fresh_from; i < before; ++i) {
      const auto b = s.element(i);
      for (const auto& g : gens) candidates.push_back(product(b, g));
    }
    Real cscale = scale;
    for (const auto& c : candidates) cscale = std::max(cscale, Real(c.norm()));
    s = extend_span<Scalar>(s, candidates, tol, cscale);
    if (s.dimension() == before) break;
    fresh_from = before;
    if (s.dimension() > n * n) throw std::logic_error("closure exceeded ambient dimension");
  }
  const bool unit = s.residual(identity<Scalar>(n)) < tol.eps_eq;
  return {std::move(s), unit};
}

template <typename Scalar>
BasicAlgebraBasis<Scalar> multiplicative_closure(const std::vector<Operator<Scalar>>& generators,
                                                 const Tolerance& tol) {
  return multiplicative_closure<Scalar>(std::span<const Operator<Scalar>>(generators), tol);
}

/// Largest residual of basis products and adjoints against the span.
template <typename Scalar>
typename Eigen::NumTraits<Scalar>::Real star_algebra_defect(const BasicSubspace<Scalar>& s) {
  using Real = typename Eigen::NumTraits<Scalar>::Real;
  Real worst = 0;
  const auto b = s.basis();
  for (std::size_t i = 0; i < b.size(); ++i) {
    worst = std::max(worst, s.residual(adjoint(b[i])));
    for (std::size_t j = 0; j < b.size(); ++j) worst = std::max(worst, s.residual(product(b[i], b[j])));
  }
  return worst;
}

template <typename Scalar>
bool is_star_subalgebra(const BasicSubspace<Scalar>& s, const Tolerance& tol) {
  return star_algebra_defect(s) < tol.eps_eq;
}

namespace detail {

// Null space of the linear map x ↦ ([x, p])_{p ∈ partners} restricted to A,
// with commutators expressed in the coordinates of `target` (which must
// contain them).  Partners that are generators of A give the centre.
template <typename Scalar>
BasicSubspace<Scalar> commutant_in(const BasicSubspace<Scalar>& a,
                                   std::span<const Operator<Scalar>> partners,
                                   const BasicSubspace<Scalar>& target, const Tolerance& tol,
                                   bool exact_outside) {
  using Real = typename Eigen::NumTraits<Scalar>::Real;
  const Index k = a.dimension();
  if (k == 0) return a;
  const auto basis = a.basis();
  // Rows: coordinates of [b_c, p] in `target`, plus one row per partner for
  // the (normally zero) component outside `target`.
  const Index block = target.dimension() + (exact_outside ? 0 : 1);
  DenseMatrix<Scalar> m = DenseMatrix<Scalar>::Zero(block * Index(partners.size()), k);
  for (std::size_t p = 0; p < partners.size(); ++p) {
    for (Index c = 0; c < k; ++c) {
      const auto comm = commutator(basis[std::size_t(c)], partners[p]);
      m.block(Index(p) * block, c, target.dimension(), 1) = target.coordinates(comm);
      if (!exact_outside) {
        const auto coords = target.coordinates(comm);
        m(Index(p) * block + target.dimension(), c) = Scalar(target.distance_to(coords, comm));
      }
    }
  }
  Eigen::JacobiSVD<DenseMatrix<Scalar>> svd(m, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const Real top = sv.size() ? sv(0) : Real(0);
  Index rank = 0;
  for (Index i = 0; i < sv.size(); ++i)
    if (sv(i) > tol.eps_rank * std::max(top, Real(1))) ++rank;
  DenseMatrix<Scalar> null = svd.matrixV().rightCols(k - rank);
  std::vector<Operator<Scalar>> elems;
  for (Index c = 0; c < null.cols(); ++c) elems.push_back(a.combine(a.frame().adjoint() * (a.frame() * null.col(c))));
  return span_basis<Scalar>(a.ambient_dim(), elems, tol);
}

}  // namespace detail

/// Centre {x ∈ A : xa = ax for all basis elements a}.
template <typename Scalar>
BasicSubspace<Scalar> center(const BasicAlgebraBasis<Scalar>& a, const Tolerance& tol) {
  const auto basis = a.subspace.basis();
  return detail::commutant_in<Scalar>(a.subspace, basis, a.subspace, tol, true);
}

/// Centre computed against a generating family of A (cheaper, same result).
template <typename Scalar>
BasicSubspace<Scalar> center(const BasicAlgebraBasis<Scalar>& a,
                             std::span<const Operator<Scalar>> generators, const Tolerance& tol) {
  return detail::commutant_in<Scalar>(a.subspace, generators, a.subspace, tol, true);
}

// ---------------------------------------------------------------------------
// Spanning families, linear maps and relation transport
// ---------------------------------------------------------------------------

/// A spanning family together with its span and a coefficient solver.
template <typename Scalar>
class BasicFrame {
 public:
  using Op = Operator<Scalar>;

  BasicFrame() = default;
  BasicFrame(Index n, std::vector<Op> family, const Tolerance& tol)
      : family_(std::move(family)),
        span_(span_basis<Scalar>(n, std::span<const Op>(family_), tol)) {
    coords_ = DenseMatrix<Scalar>(span_.dimension(), Index(family_.size()));
    for (std::size_t i = 0; i < family_.size(); ++i) coords_.col(Index(i)) = span_.coordinates(family_[i]);
    solver_.compute(coords_);
  }

  const std::vector<Op>& family() const { return family_; }
  const BasicSubspace<Scalar>& span() const { return span_; }
  /// Family vectors in the coordinates of span().
  const DenseMatrix<Scalar>& coordinate_matrix() const { return coords_; }
  Index size() const { return Index(family_.size()); }
  bool independent() const { return span_.dimension() == size(); }

  /// Minimal-norm coefficients a with Σ a_i f_i closest to x.
  DenseVector<Scalar> solve(const Op& x) const {
    if (size() == 0) return {};
    return solver_.solve(span_.coordinates(x));
  }

  Op combine(const DenseVector<Scalar>& a) const {
    Op out(span_.ambient_dim(), span_.ambient_dim());
    for (std::size_t i = 0; i < family_.size(); ++i)
      if (a(Index(i)) != Scalar(0)) out += a(Index(i)) * family_[i];
    return pruned(out);
  }

 private:
  std::vector<Op> family_;
  BasicSubspace<Scalar> span_;
  DenseMatrix<Scalar> coords_;
  Eigen::CompleteOrthogonalDecomposition<DenseMatrix<Scalar>> solver_;
};

using Frame = BasicFrame<cd>;

/// Linear map between two subspaces, stored in their orthonormal coordinates.
template <typename Scalar>
struct BasicLinearMap {
  using Op = Operator<Scalar>;
  BasicSubspace<Scalar> source;
  BasicSubspace<Scalar> target;
  DenseMatrix<Scalar> matrix;  // target.dimension() x source.dimension()

  Op operator()(const Op& x) const { return target.combine(matrix * source.coordinates(x)); }

  typename Eigen::NumTraits<Scalar>::Real distance(const Op& x, const Op& y) const {
    return target.distance_to(matrix * source.coordinates(x), y);
  }

  Index rank(const Tolerance& tol) const {
    if (matrix.size() == 0) return 0;
    Eigen::JacobiSVD<DenseMatrix<Scalar>> svd(matrix);
    const auto& s = svd.singularValues();
    Index r = 0;
    for (Index i = 0; i < s.size(); ++i)
      if (s(i) > tol.eps_rank * s(0)) ++r;
    return r;
  }
  bool injective(const Tolerance& tol) const { return rank(tol) == source.dimension(); }
  bool surjective(const Tolerance& tol) const { return rank(tol) == target.dimension(); }
};

using LinearMap = BasicLinearMap<cd>;

/// g ∘ f.
template <typename Scalar>
BasicLinearMap<Scalar> compose(const BasicLinearMap<Scalar>& g, const BasicLinearMap<Scalar>& f) {
  // f.target and g.source may use different orthonormal bases of one space.
  DenseMatrix<Scalar> change(g.source.dimension(), f.target.dimension());
  for (Index i = 0; i < f.target.dimension(); ++i)
    change.col(i) = g.source.coordinates(f.target.element(i));
  return {f.source, g.target, g.matrix * change * f.matrix};
}

/// Residuals of a *-homomorphism certificate.
struct HomCertificate {
  double multiplicativity = 0;  // max ‖φ(xy) − φ(x)φ(y)‖
  double star = 0;              // max ‖φ(x*) − φ(x)*‖
  double marking = 0;           // max ‖φ(v_i) − w_i‖ on the marked families
  bool passed(const Tolerance& tol) const {
    return multiplicativity < tol.eps_eq && star < tol.eps_eq && marking < tol.eps_eq;
  }
};

/// Certifies φ on a spanning family `v` (with intended images `w`) and,
/// optionally, a generating set `gv` with images `gw`.  Without generators
/// all family pairs are checked; with generators the pairs (v_i, g_k) are
/// checked, which suffices because φ(x g) = φ(x) φ(g) for all x in a
/// spanning set and g in a generating set implies multiplicativity.
template <typename Scalar>
HomCertificate certify_homomorphism(const BasicLinearMap<Scalar>& phi,
                                    std::span<const Operator<Scalar>> v,
                                    std::span<const Operator<Scalar>> w,
                                    std::span<const Operator<Scalar>> gv = {},
                                    std::span<const Operator<Scalar>> gw = {}) {
  HomCertificate cert;
  auto bump = [](double& slot, double val) { slot = std::max(slot, val); };
  for (std::size_t i = 0; i < v.size(); ++i) {
    bump(cert.marking, double(phi.distance(v[i], w[i])));
    bump(cert.star, double(phi.distance(adjoint(v[i]), adjoint(w[i]))));
  }
  if (gv.empty()) {
    for (std::size_t i = 0; i < v.size(); ++i)
      for (std::size_t j = 0; j < v.size(); ++j)
        bump(cert.multiplicativity, double(phi.distance(product(v[i], v[j]), product(w[i], w[j]))));
  } else {
    for (std::size_t k = 0; k < gv.size(); ++k) bump(cert.marking, double(phi.distance(gv[k], gw[k])));
    for (std::size_t i = 0; i < v.size(); ++i)
      for (std::size_t k = 0; k < gv.size(); ++k)
        bump(cert.multiplicativity, double(phi.distance(product(v[i], gv[k]), product(w[i], gw[k]))));
  }
  return cert;
}

/// A certified linear map induced by v_i ↦ w_i.
template <typename Scalar>
struct BasicInducedMap {
  BasicLinearMap<Scalar> map;
  HomCertificate certificate;
  bool injective = false;
  bool surjective = false;
};

using InducedMap = BasicInducedMap<cd>;

/// The linear map span(v) → span(w) determined by v_i ↦ w_i, provided every
/// linear relation among the v_i also holds among the w_i.  The map is
/// certified multiplicative and *-preserving; failures return nothing.
template <typename Scalar>
std::optional<BasicInducedMap<Scalar>> induced_homomorphism(
    const BasicSubspace<Scalar>& a1, std::span<const Operator<Scalar>> v,
    const BasicSubspace<Scalar>& a2, std::span<const Operator<Scalar>> w, const Tolerance& tol,
    std::span<const Operator<Scalar>> gv = {}, std::span<const Operator<Scalar>> gw = {}) {
  using Real = typename Eigen::NumTraits<Scalar>::Real;
  if (v.size() != w.size() || gv.size() != gw.size())
    throw std::invalid_argument("marked families must be index-aligned");
  const Index m = Index(v.size());
  DenseMatrix<Scalar> cv(a1.dimension(), m), cw(a2.dimension(), m);
  for (Index i = 0; i < m; ++i) {
    cv.col(i) = a1.coordinates(v[std::size_t(i)]);
    cw.col(i) = a2.coordinates(w[std::size_t(i)]);
  }
  auto rank_of = [&](const DenseMatrix<Scalar>& x) -> Index {
    if (x.size() == 0) return 0;
    Eigen::JacobiSVD<DenseMatrix<Scalar>> svd(x);
    const auto& s = svd.singularValues();
    if (s(0) == Real(0)) return 0;
    Index r = 0;
    for (Index i = 0; i < s.size(); ++i)
      if (s(i) > tol.eps_rank * s(0)) ++r;
    return r;
  };
  // v must span a1; relations of v must hold for w: rank[cv; cw] == rank cv.
  if (rank_of(cv) != a1.dimension()) return std::nullopt;
  DenseMatrix<Scalar> stacked(cv.rows() + cw.rows(), m);
  stacked << cv / std::max(Real(cv.norm()), Real(1e-300)), cw / std::max(Real(cw.norm()), Real(1e-300));
  if (rank_of(stacked) != a1.dimension()) return std::nullopt;
  Eigen::CompleteOrthogonalDecomposition<DenseMatrix<Scalar>> cod(cv.transpose());
  DenseMatrix<Scalar> mt = cod.solve(DenseMatrix<Scalar>(cw.transpose()));
  BasicLinearMap<Scalar> phi{a1, a2, mt.transpose()};
  auto cert = certify_homomorphism(phi, v, w, gv, gw);
  if (!cert.passed(tol)) return std::nullopt;
  BasicInducedMap<Scalar> out{std::move(phi), cert, false, false};
  const Index r = out.map.rank(tol);
  out.injective = r == a1.dimension();
  out.surjective = r == a2.dimension();
  return out;
}

/// Relation-transport isomorphism search between marked algebras: returns a
/// certified *-isomorphism A1 → A2 with v_i ↦ w_i, or nothing.
template <typename Scalar>
std::optional<BasicInducedMap<Scalar>> find_generator_isomorphism(
    const BasicAlgebraBasis<Scalar>& a1, std::span<const Operator<Scalar>> v,
    const BasicAlgebraBasis<Scalar>& a2, std::span<const Operator<Scalar>> w, const Tolerance& tol,
    std::span<const Operator<Scalar>> gv = {}, std::span<const Operator<Scalar>> gw = {}) {
  if (a1.dimension() != a2.dimension()) return std::nullopt;
  // w must span A2 as well
  for (const auto& x : w)
    if (a2.subspace.residual(x) >= tol.eps_eq) return std::nullopt;
  auto found = induced_homomorphism<Scalar>(a1.subspace, v, a2.subspace, w, tol, gv, gw);
  if (!found || !found->injective || !found->surjective) return std::nullopt;
  return found;
}

}  // namespace qtwist
