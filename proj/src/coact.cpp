#include "qtwist/coact.hpp"

#include <algorithm>
#include <stdexcept>

namespace qtwist {

namespace {

void check_shape(const COperator& x, Index n, const char* what) {
  if (x.rows() != n || x.cols() != n) throw std::invalid_argument(std::string(what) + ": shape mismatch");
}

COperator block_diag(const COperator& a, const COperator& b) {
  const Index n = a.rows(), m = b.rows();
  std::vector<Eigen::Triplet<cd>> t;
  for (Index k = 0; k < a.outerSize(); ++k)
    for (COperator::InnerIterator it(a, k); it; ++it) t.emplace_back(it.row(), it.col(), it.value());
  for (Index k = 0; k < b.outerSize(); ++k)
    for (COperator::InnerIterator it(b, k); it; ++it) t.emplace_back(n + it.row(), n + it.col(), it.value());
  COperator out(n + m, n + m);
  out.setFromTriplets(t.begin(), t.end());
  return out;
}

std::vector<COperator> lambdas(const FinAbGroup& g) {
  std::vector<COperator> out;
  for (int k = 0; k < g.order(); ++k) out.push_back(translation(g, k));
  return out;
}

// span{e ⊗ λ_g}
Subspace tensor_with_group(const Subspace& c, const std::vector<COperator>& lam, const Tolerance& tol) {
  std::vector<COperator> v;
  for (const auto& e : c.basis())
    for (const auto& l : lam) v.push_back(kron(e, l));
  return span_basis(c.ambient_dim() * Index(lam.size()), std::span<const COperator>(v), tol);
}

}  // namespace

COperator GradedAlgebra::homogeneous_part(const COperator& x, int g) const {
  const CVector a = coefficients(x);
  COperator out(carrier, carrier);
  for (Index k = 0; k < dimension(); ++k)
    if (degree[std::size_t(k)] == g) out += a(k) * basis[std::size_t(k)];
  return pruned(out);
}

GradedAlgebra make_graded(const FinAbGroup& g, Index carrier, const DegreePieces& pieces, const Tolerance& tol,
                          std::string name, bool validate) {
  tol.validate();
  GradedAlgebra c;
  c.group = g;
  c.carrier = carrier;
  c.name = std::move(name);
  std::vector<std::vector<COperator>> per(std::size_t(g.order()));
  for (const auto& [deg, xs] : pieces) {
    if (deg < 0 || deg >= g.order()) throw std::invalid_argument("degree outside the grading group");
    for (const auto& x : xs) {
      check_shape(x, carrier, "make_graded");
      if (!all_finite(x)) throw std::invalid_argument("make_graded: non-finite entry");
      per[std::size_t(deg)].push_back(x);
    }
  }
  for (int d = 0; d < g.order(); ++d) {
    Subspace kept(carrier);
    for (const auto& x : per[std::size_t(d)]) {
      const COperator one[] = {x};
      Subspace grown = extend_span<cd>(kept, one, tol);
      if (grown.dimension() > kept.dimension()) {
        kept = std::move(grown);
        c.basis.push_back(x);
        c.degree.push_back(d);
      }
    }
    c.components.push_back(std::move(kept));
  }
  c.frame = Frame(carrier, c.basis, tol);
  c.algebra.subspace = c.frame.span();
  c.algebra.contains_identity = c.dimension() > 0 && c.algebra.subspace.residual(identity(carrier)) < tol.eps_eq;
  if (validate) {
    const GradingReport r = check_grading(c, tol);
    if (!r.passed(tol)) throw std::invalid_argument("grading axioms fail for '" + c.name + "'");
  }
  return c;
}

GradedAlgebra group_algebra(const FinAbGroup& g, const Tolerance& tol) {
  DegreePieces p;
  for (int k = 0; k < g.order(); ++k) p.push_back({k, {translation(g, k)}});
  return make_graded(g, g.order(), p, tol, "C*(" + g.to_string() + ")");
}

GradedAlgebra function_algebra(const FinAbGroup& g, const Tolerance& tol) {
  const Bicharacter pairing = canonical_pairing(g);
  DegreePieces p;
  for (int xi = 0; xi < g.order(); ++xi) {
    std::vector<cd> v;
    for (int k = 0; k < g.order(); ++k) v.push_back(pairing.evaluate_index(k, xi));
    p.push_back({xi, {multiplication(v)}});
  }
  return make_graded(g, g.order(), p, tol, "C(" + g.to_string() + ")");
}

GradedAlgebra trivially_graded(const FinAbGroup& g, const std::vector<COperator>& generators, const Tolerance& tol,
                               std::string name) {
  if (generators.empty()) throw std::invalid_argument("trivially_graded: no generators");
  const AlgebraBasis a = multiplicative_closure(generators, tol);
  return make_graded(g, a.ambient_dim(), {{0, a.subspace.basis()}}, tol, std::move(name));
}

GradedAlgebra matrix_labels(const FinAbGroup& g, const std::vector<int>& labels, const std::vector<int>& blocks,
                            const Tolerance& tol) {
  const Index n = Index(labels.size());
  std::vector<int> b = blocks.empty() ? std::vector<int>{int(n)} : blocks;
  int total = 0;
  for (int x : b) {
    if (x < 1) throw std::invalid_argument("matrix_labels: block sizes must be positive");
    total += x;
  }
  if (total != n) throw std::invalid_argument("matrix_labels: blocks must sum to the label count");
  DegreePieces p;
  int start = 0;
  for (int x : b) {
    for (int i = start; i < start + x; ++i)
      for (int j = start; j < start + x; ++j) {
        const int deg = g.add_index(labels[std::size_t(i)], g.neg_index(labels[std::size_t(j)]));
        p.push_back({deg, {matrix_unit<cd>(n, n, i, j)}});
      }
    start += x;
  }
  return make_graded(g, n, p, tol, "matrix");
}

GradedAlgebra direct_sum(const GradedAlgebra& a, const GradedAlgebra& b, const Tolerance& tol) {
  if (!(a.group == b.group)) throw std::invalid_argument("direct_sum: grading groups differ");
  DegreePieces p;
  const COperator za(a.carrier, a.carrier), zb(b.carrier, b.carrier);
  for (Index k = 0; k < a.dimension(); ++k) p.push_back({a.degree[std::size_t(k)], {block_diag(a.basis[std::size_t(k)], zb)}});
  for (Index k = 0; k < b.dimension(); ++k) p.push_back({b.degree[std::size_t(k)], {block_diag(za, b.basis[std::size_t(k)])}});
  return make_graded(a.group, a.carrier + b.carrier, p, tol, a.name + "+" + b.name);
}

GradedAlgebra tensor(const GradedAlgebra& a, const GradedAlgebra& b, const Tolerance& tol) {
  if (!(a.group == b.group)) throw std::invalid_argument("tensor: grading groups differ");
  DegreePieces p;
  for (Index i = 0; i < a.dimension(); ++i)
    for (Index j = 0; j < b.dimension(); ++j)
      p.push_back({a.group.add_index(a.degree[std::size_t(i)], b.degree[std::size_t(j)]),
                   {kron(a.basis[std::size_t(i)], b.basis[std::size_t(j)])}});
  return make_graded(a.group, a.carrier * b.carrier, p, tol, a.name + "(x)" + b.name);
}

GradingReport check_grading(const GradedAlgebra& c, const Tolerance& tol) {
  GradingReport r;
  r.independent = c.frame.independent();
  r.star_algebra = star_algebra_defect(c.algebra.subspace);
  const FinAbGroup& g = c.group;
  for (Index i = 0; i < c.dimension(); ++i) {
    const int di = c.degree[std::size_t(i)];
    const auto& bi = c.basis[std::size_t(i)];
    r.adjoint = std::max(r.adjoint, c.components[std::size_t(g.neg_index(di))].residual(adjoint(bi)));
    for (Index j = 0; j < c.dimension(); ++j) {
      const int dj = c.degree[std::size_t(j)];
      const auto prod = product(bi, c.basis[std::size_t(j)]);
      r.multiplicative = std::max(r.multiplicative, c.components[std::size_t(g.add_index(di, dj))].residual(prod));
    }
  }
  (void)tol;
  return r;
}

// ---------------------------------------------------------------------------

COperator CoactionMap::apply(const COperator& x) const {
  const CVector a = source.coordinates(x);
  COperator out(carrier * group.order(), carrier * group.order());
  for (Index i = 0; i < a.size(); ++i)
    if (a(i) != cd(0)) out += a(i) * images[std::size_t(i)];
  return pruned(out);
}

CoactionMap grading_to_coaction(const GradedAlgebra& c) {
  CoactionMap gamma{c.group, c.carrier, c.algebra.subspace, {}};
  const auto lam = lambdas(c.group);
  for (const auto& e : c.algebra.subspace.basis()) {
    const CVector a = c.coefficients(e);
    COperator img(c.carrier * c.group.order(), c.carrier * c.group.order());
    for (Index k = 0; k < c.dimension(); ++k)
      if (a(k) != cd(0)) img += a(k) * kron(c.basis[std::size_t(k)], lam[std::size_t(c.degree[std::size_t(k)])]);
    gamma.images.push_back(pruned(img));
  }
  return gamma;
}

GradedAlgebra coaction_to_grading(const CoactionMap& gamma, const Tolerance& tol) {
  const Index n = gamma.carrier, m = gamma.group.order();
  DegreePieces pieces{std::size_t(m)};
  for (Index g = 0; g < m; ++g) pieces[std::size_t(g)].first = int(g);
  const auto basis = gamma.source.basis();
  for (std::size_t i = 0; i < basis.size(); ++i) {
    COperator total(n, n);
    for (Index g = 0; g < m; ++g) {
      COperator slice = second_leg_block(gamma.images[i], n, m, g, 0);
      total += slice;
      if (slice.norm() > tol.eps_rank) pieces[std::size_t(g)].second.push_back(pruned(slice));
    }
    if (distance(COperator(total), basis[i]) >= tol.eps_eq)
      throw std::invalid_argument("map is not a coaction: slices do not recombine");
  }
  GradedAlgebra c;
  try {
    c = make_graded(gamma.group, n, pieces, tol, "sliced");
  } catch (const std::invalid_argument&) {
    throw std::invalid_argument("map is not a coaction: slices do not form a grading");
  }
  if (!subspace_equal(c.algebra.subspace, gamma.source, tol))
    throw std::invalid_argument("map is not a coaction: slices leave the algebra");
  const CoactionMap back = grading_to_coaction(c);
  for (std::size_t i = 0; i < basis.size(); ++i)
    if (distance(back.apply(basis[i]), gamma.images[i]) >= tol.eps_eq)
      throw std::invalid_argument("map is not a coaction: slices are not homogeneous");
  return c;
}

CoactionReport verify_coaction(const CoactionMap& gamma, const Tolerance& tol) {
  CoactionReport r;
  const Index n = gamma.carrier, m = gamma.group.order(), k = gamma.source.dimension();
  const auto basis = gamma.source.basis();
  const auto lam = lambdas(gamma.group);
  r.injective = span_rank<cd>(n * m, gamma.images, tol) == k;
  for (Index i = 0; i < k; ++i) {
    const auto& gi = gamma.images[std::size_t(i)];
    r.star = std::max(r.star, distance(gamma.apply(adjoint(basis[std::size_t(i)])), adjoint(gi)));
    for (Index j = 0; j < k; ++j)
      r.multiplicative = std::max(r.multiplicative, distance(gamma.apply(product(basis[std::size_t(i)], basis[std::size_t(j)])),
                                                             product(gi, gamma.images[std::size_t(j)])));
  }
  const Subspace ca = tensor_with_group(gamma.source, lam, tol);
  const COperator w23 = kron(identity(n), kac_takesaki_unitary(gamma.group));
  std::vector<COperator> pod;
  for (Index i = 0; i < k; ++i) {
    const auto& y = gamma.images[std::size_t(i)];
    r.containment = std::max(r.containment, ca.residual(y));
    COperator lhs(n * m * m, n * m * m);
    for (Index g = 0; g < m; ++g) lhs += kron(gamma.apply(second_leg_block(y, n, m, g, 0)), lam[std::size_t(g)]);
    const COperator rhs = product(w23, kron(y, identity(m)), adjoint(w23));
    r.comodule = std::max(r.comodule, distance(COperator(lhs), rhs));
    for (Index h = 0; h < m; ++h) pod.push_back(product(y, kron(identity(n), lam[std::size_t(h)])));
  }
  const Subspace ps = span_basis(n * m, std::span<const COperator>(pod), tol);
  r.podles_dim = ps.dimension();
  r.expected_podles_dim = k * m;
  r.podles_equal = subspace_equal(ps, ca, tol);
  return r;
}

CoactionReport verify_left_coaction(const FinAbGroup& g, const Subspace& source, const std::vector<COperator>& images,
                                    const Tolerance& tol) {
  const Index n = source.ambient_dim(), m = g.order();
  const COperator f = flip(m, n);  // ℓ²(G)⊗C^n → C^n⊗ℓ²(G)
  CoactionMap right{g, n, source, {}};
  for (const auto& x : images) right.images.push_back(product(f, x, adjoint(f)));
  return verify_coaction(right, tol);
}

// ---------------------------------------------------------------------------

COperator GradedHilbertSpace::projection(int g) const {
  std::vector<cd> v;
  for (int l : labels) v.push_back(l == g ? cd(1) : cd(0));
  return multiplication(v);
}

COperator GradedHilbertSpace::corepresentation() const {
  COperator u(dim() * group.order(), dim() * group.order());
  for (int g = 0; g < group.order(); ++g) u += kron(projection(g), translation(group, g));
  return pruned(u);
}

COperator CovariantRep::apply(const COperator& x) const {
  const CVector a = algebra.coefficients(x);
  COperator out(space.dim(), space.dim());
  for (Index k = 0; k < a.size(); ++k)
    if (a(k) != cd(0)) out += a(k) * images[std::size_t(k)];
  return pruned(out);
}

CovariantRep canonical_covariant_rep(const GradedAlgebra& c) {
  CovariantRep rep;
  rep.algebra = c;
  rep.space.group = c.group;
  for (Index i = 0; i < c.carrier; ++i)
    for (int k = 0; k < c.group.order(); ++k) rep.space.labels.push_back(k);
  for (Index k = 0; k < c.dimension(); ++k)
    rep.images.push_back(kron(c.basis[std::size_t(k)], translation(c.group, c.degree[std::size_t(k)])));
  return rep;
}

CovariantReport check_covariant(const CovariantRep& rep, const Tolerance& tol) {
  CovariantReport r;
  const GradedAlgebra& c = rep.algebra;
  const FinAbGroup& g = c.group;
  if (!(rep.space.group == g)) throw std::invalid_argument("covariant representation: grading groups differ");
  r.rank = span_rank<cd>(rep.space.dim(), rep.images, tol);
  r.faithful = r.rank == c.dimension();
  std::vector<COperator> proj;
  for (int h = 0; h < g.order(); ++h) proj.push_back(rep.space.projection(h));
  const COperator U = rep.space.corepresentation();
  const COperator I = identity(rep.space.dim());
  for (Index i = 0; i < c.dimension(); ++i) {
    const auto& pi = rep.images[std::size_t(i)];
    const int di = c.degree[std::size_t(i)];
    r.homomorphism = std::max(r.homomorphism, distance(rep.apply(adjoint(c.basis[std::size_t(i)])), adjoint(pi)));
    for (Index j = 0; j < c.dimension(); ++j)
      r.homomorphism = std::max(r.homomorphism, distance(rep.apply(product(c.basis[std::size_t(i)], c.basis[std::size_t(j)])),
                                                         product(pi, rep.images[std::size_t(j)])));
    for (int h = 0; h < g.order(); ++h) {
      const COperator leak = product(COperator(I - proj[std::size_t(g.add_index(di, h))]), pi, proj[std::size_t(h)]);
      r.covariance = std::max(r.covariance, double(leak.norm()));
    }
    const COperator lhs = kron(pi, translation(g, di));
    r.corepresentation = std::max(r.corepresentation, distance(lhs, product(U, kron(pi, identity(g.order())), adjoint(U))));
  }
  return r;
}

// ---------------------------------------------------------------------------

COperator corepresentation_cocycle(const GradedHilbertSpace& k) { return k.corepresentation(); }

CocycleReport check_cocycle(const GradedAlgebra& c, const COperator& u, const Tolerance& tol) {
  CocycleReport r;
  const Index n = c.carrier, m = c.group.order();
  check_shape(u, n * m, "check_cocycle");
  const auto lam = lambdas(c.group);
  r.unitary = distance(COperator(adjoint(u) * u), identity(n * m));
  const Subspace ca = tensor_with_group(c.algebra.subspace, lam, tol);
  r.membership = ca.residual(u);
  const CoactionMap gamma = grading_to_coaction(c);
  COperator gu(n * m * m, n * m * m);
  for (Index g = 0; g < m; ++g) gu += kron(gamma.apply(second_leg_block(u, n, m, g, 0)), lam[std::size_t(g)]);
  const COperator w23 = kron(identity(n), kac_takesaki_unitary(c.group));
  const COperator u12 = kron(u, identity(m));
  r.cocycle = distance(COperator(u12 * gu), product(w23, u12, adjoint(w23)));
  std::vector<COperator> dens;
  const COperator us = adjoint(u);
  for (const auto& y : gamma.images)
    for (Index h = 0; h < m; ++h) dens.push_back(product(y, us, kron(identity(n), lam[std::size_t(h)])));
  const Subspace ds = span_basis(n * m, std::span<const COperator>(dens), tol);
  r.density_dim = ds.dimension();
  r.density = ds.dimension() == c.dimension() * m && subspace_equal(ds, ca, tol);
  return r;
}

GradedAlgebra twist_by_cocycle(const GradedAlgebra& c, const COperator& u, const Tolerance& tol) {
  const CocycleReport r = check_cocycle(c, u, tol);
  if (!r.passed(tol)) throw std::invalid_argument("twist_by_cocycle: cocycle conditions fail");
  CoactionMap gamma = grading_to_coaction(c);
  const COperator us = adjoint(u);
  for (auto& y : gamma.images) y = product(u, y, us);
  GradedAlgebra out = coaction_to_grading(gamma, tol);
  out.name = c.name + "^u";
  return out;
}

GradedAlgebra transport_grading(const GradedAlgebra& c, const GroupHom& f, const Tolerance& tol) {
  if (!(f.source == c.group)) throw std::invalid_argument("transport_grading: hom source differs from grading group");
  DegreePieces p;
  for (Index k = 0; k < c.dimension(); ++k) p.push_back({f.apply_index(c.degree[std::size_t(k)]), {c.basis[std::size_t(k)]}});
  return make_graded(f.target, c.carrier, p, tol, c.name);
}

BicharacterAction action_from_bicharacter(const GradedAlgebra& c, const Bicharacter& chi, const Tolerance& tol) {
  if (!(chi.left() == c.group)) throw std::invalid_argument("action_from_bicharacter: group mismatch");
  BicharacterAction act;
  const Subspace& s = c.algebra.subspace;
  const auto basis = s.basis();
  const Index k = s.dimension();
  for (int h = 0; h < chi.right().order(); ++h) {
    CMatrix m(k, k);
    for (Index i = 0; i < k; ++i) {
      const CVector a = c.coefficients(basis[std::size_t(i)]);
      COperator img(c.carrier, c.carrier);
      for (Index j = 0; j < c.dimension(); ++j)
        img += a(j) * chi.evaluate_index(c.degree[std::size_t(j)], h) * c.basis[std::size_t(j)];
      m.col(i) = s.coordinates(img);
    }
    act.theta.push_back({s, s, m});
  }
  for (const auto& th : act.theta)
    for (Index i = 0; i < k; ++i) {
      const auto ti = th(basis[std::size_t(i)]);
      act.automorphism = std::max(act.automorphism, th.distance(adjoint(basis[std::size_t(i)]), adjoint(ti)));
      for (Index j = 0; j < k; ++j)
        act.automorphism = std::max(act.automorphism, th.distance(product(basis[std::size_t(i)], basis[std::size_t(j)]),
                                                                  product(ti, th(basis[std::size_t(j)]))));
    }
  const FinAbGroup& H = chi.right();
  act.homomorphism = (act.theta[0].matrix - CMatrix::Identity(k, k)).norm();
  for (int a = 0; a < H.order(); ++a)
    for (int b = 0; b < H.order(); ++b)
      act.homomorphism = std::max(act.homomorphism,
                                  double((act.theta[std::size_t(H.add_index(a, b))].matrix -
                                          act.theta[std::size_t(a)].matrix * act.theta[std::size_t(b)].matrix)
                                             .norm()));
  (void)tol;
  return act;
}

COperator GradedMorphism::apply(const COperator& x) const {
  const CVector a = source.coefficients(x);
  COperator out(target.carrier, target.carrier);
  for (Index k = 0; k < a.size(); ++k)
    if (a(k) != cd(0)) out += a(k) * images[std::size_t(k)];
  return pruned(out);
}

MorphismReport check_morphism(const GradedMorphism& f, const Tolerance& tol) {
  if (!(f.source.group == f.target.group)) throw std::invalid_argument("graded morphism: grading groups differ");
  if (Index(f.images.size()) != f.source.dimension()) throw std::invalid_argument("graded morphism: image count");
  MorphismReport r;
  const auto& s = f.source;
  for (Index i = 0; i < s.dimension(); ++i) {
    const auto& fi = f.images[std::size_t(i)];
    r.equivariance = std::max(r.equivariance, f.target.components[std::size_t(s.degree[std::size_t(i)])].residual(fi));
    r.homomorphism = std::max(r.homomorphism, distance(f.apply(adjoint(s.basis[std::size_t(i)])), adjoint(fi)));
    for (Index j = 0; j < s.dimension(); ++j)
      r.homomorphism = std::max(r.homomorphism, distance(f.apply(product(s.basis[std::size_t(i)], s.basis[std::size_t(j)])),
                                                         product(fi, f.images[std::size_t(j)])));
  }
  const Index rank = span_rank<cd>(f.target.carrier, f.images, tol);
  r.injective = rank == s.dimension();
  r.surjective = rank == f.target.dimension();
  return r;
}

}  // namespace qtwist
