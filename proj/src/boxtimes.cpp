#include "qtwist/boxtimes.hpp"

#include <algorithm>
#include <stdexcept>

namespace qtwist {

bool CrossedProductChecks::passed(const Tolerance& tol) const {
  return closure < tol.eps_eq && exchange && dimension_law && iota_c_hom < tol.eps_eq && iota_d_hom < tol.eps_eq &&
         iota_c_injective && iota_d_injective && commutation < tol.eps_eq && equivariant_commute < tol.eps_eq;
}

namespace {

COperator embed(const GradedAlgebra& a, const std::vector<COperator>& images, Index ambient, const COperator& x) {
  const CVector coef = a.coefficients(x);
  COperator out(ambient, ambient);
  for (Index k = 0; k < coef.size(); ++k)
    if (coef(k) != cd(0)) out += coef(k) * images[std::size_t(k)];
  return pruned(out);
}

double hom_defect(const GradedAlgebra& a, const std::vector<COperator>& images, Index ambient) {
  double worst = 0;
  for (Index i = 0; i < a.dimension(); ++i) {
    const auto& bi = a.basis[std::size_t(i)];
    worst = std::max(worst, distance(embed(a, images, ambient, adjoint(bi)), adjoint(images[std::size_t(i)])));
    for (Index j = 0; j < a.dimension(); ++j)
      worst = std::max(worst, distance(embed(a, images, ambient, product(bi, a.basis[std::size_t(j)])),
                                       product(images[std::size_t(i)], images[std::size_t(j)])));
  }
  return worst;
}

struct Marked {
  std::vector<COperator> family;
  std::vector<COperator> generators;
};

// ι_C(c_i)ι_D(d_j) for the given elements of C and D, plus the generators.
Marked marked(const CrossedProduct& x, const std::vector<COperator>& cs, const std::vector<COperator>& ds) {
  Marked m;
  std::vector<COperator> ec, ed;
  for (const auto& c : cs) ec.push_back(x.embed_c(c));
  for (const auto& d : ds) ed.push_back(x.embed_d(d));
  for (const auto& a : ec)
    for (const auto& b : ed) m.family.push_back(product(a, b));
  m.generators = ec;
  m.generators.insert(m.generators.end(), ed.begin(), ed.end());
  return m;
}

std::optional<InducedMap> marked_iso(const CrossedProduct& x1, const CrossedProduct& x2,
                                     const std::vector<COperator>& cs, const std::vector<COperator>& ds,
                                     const Tolerance& tol) {
  const Marked a = marked(x1, cs, ds), b = marked(x2, cs, ds);
  return find_generator_isomorphism<cd>(x1.algebra, a.family, x2.algebra, b.family, tol, a.generators, b.generators);
}

}  // namespace

COperator CrossedProduct::embed_c(const COperator& x) const { return embed(c, iota_c, ambient, x); }
COperator CrossedProduct::embed_d(const COperator& y) const { return embed(d, iota_d, ambient, y); }

std::vector<COperator> CrossedProduct::generators() const {
  std::vector<COperator> g = iota_c;
  g.insert(g.end(), iota_d.begin(), iota_d.end());
  return g;
}

static void require_matching_groups(const GradedAlgebra& c, const GradedAlgebra& d, const Bicharacter& chi) {
  if (!(chi.left() == c.group) || !(chi.right() == d.group))
    throw std::invalid_argument("bicharacter groups do not match the gradings");
}

CrossedProduct assemble(GradedAlgebra c, GradedAlgebra d, Bicharacter chi, Index ambient,
                        std::vector<COperator> iota_c, std::vector<COperator> iota_d, std::string provenance,
                        const Tolerance& tol) {
  require_matching_groups(c, d, chi);
  CrossedProduct x;
  x.c = std::move(c);
  x.d = std::move(d);
  x.chi = std::move(chi);
  x.ambient = ambient;
  x.iota_c = std::move(iota_c);
  x.iota_d = std::move(iota_d);
  x.provenance = std::move(provenance);

  std::vector<COperator> fam, rev;
  for (const auto& a : x.iota_c)
    for (const auto& b : x.iota_d) {
      fam.push_back(product(a, b));
      rev.push_back(product(b, a));
    }
  x.family = Frame(ambient, fam, tol);
  x.algebra.subspace = x.family.span();
  x.algebra.contains_identity = x.algebra.subspace.residual(identity(ambient)) < tol.eps_eq;

  CrossedProductChecks& k = x.checks;
  const Subspace& s = x.algebra.subspace;
  const auto gens = x.generators();
  for (const auto& g : gens) k.closure = std::max(k.closure, s.residual(g));
  for (const auto& f : fam) {
    k.closure = std::max(k.closure, s.residual(adjoint(f)));
    for (const auto& g : gens) k.closure = std::max(k.closure, s.residual(product(f, g)));
  }
  k.exchange = subspace_equal(span_basis(ambient, std::span<const COperator>(rev), tol), s, tol);
  k.dimension_law = s.dimension() == x.c.dimension() * x.d.dimension() && x.family.independent();
  k.iota_c_hom = hom_defect(x.c, x.iota_c, ambient);
  k.iota_d_hom = hom_defect(x.d, x.iota_d, ambient);
  k.iota_c_injective = span_rank<cd>(ambient, x.iota_c, tol) == x.c.dimension();
  k.iota_d_injective = span_rank<cd>(ambient, x.iota_d, tol) == x.d.dimension();
  const Index nd = x.d.dimension();
  for (Index i = 0; i < x.c.dimension(); ++i)
    for (Index j = 0; j < nd; ++j) {
      const int gi = x.c.degree[std::size_t(i)], hj = x.d.degree[std::size_t(j)];
      const cd inv = std::conj(x.chi.evaluate_index(gi, hj));
      const auto& cd_ = fam[std::size_t(i * nd + j)];
      k.commutation = std::max(k.commutation, distance(rev[std::size_t(i * nd + j)], COperator(inv * cd_)));
      if (gi == 0 || hj == 0)
        k.equivariant_commute = std::max(k.equivariant_commute, distance(rev[std::size_t(i * nd + j)], cd_));
    }
  return x;
}

CrossedProduct build_via_heisenberg(const GradedAlgebra& c, const GradedAlgebra& d, const Bicharacter& chi,
                                    const RepPair& pair, const Tolerance& tol) {
  require_matching_groups(c, d, chi);
  if (!is_heisenberg(pair, chi, tol).holds) throw std::invalid_argument("witness pair is not χ-Heisenberg");
  const Index nc = c.carrier, nd = d.carrier, l = pair.dim;
  std::vector<COperator> ic, id;
  const COperator Ic = identity(nc), Id = identity(nd);
  for (Index k = 0; k < c.dimension(); ++k)
    ic.push_back(kron(c.basis[std::size_t(k)], Id, pair.U[std::size_t(c.degree[std::size_t(k)])]));
  for (Index k = 0; k < d.dimension(); ++k)
    id.push_back(kron(Ic, d.basis[std::size_t(k)], pair.V[std::size_t(d.degree[std::size_t(k)])]));
  CrossedProduct x = assemble(c, d, chi, nc * nd * l, std::move(ic), std::move(id), "heisenberg:" + pair.provenance, tol);
  x.witness_dim = l;
  return x;
}

CrossedProduct build_via_heisenberg(const GradedAlgebra& c, const GradedAlgebra& d, const Bicharacter& chi,
                                    const Tolerance& tol) {
  return build_via_heisenberg(c, d, chi, canonical_heisenberg(chi), tol);
}

COperator z_unitary(const GradedHilbertSpace& k, const GradedHilbertSpace& l, const Bicharacter& chi) {
  if (!(k.group == chi.left()) || !(l.group == chi.right())) throw std::invalid_argument("z_unitary: group mismatch");
  std::vector<cd> v;
  for (int a : k.labels)
    for (int b : l.labels) v.push_back(std::conj(chi.evaluate_index(a, b)));
  return multiplication(v);
}

double z_identity_residual(const GradedHilbertSpace& k, const GradedHilbertSpace& l, const Bicharacter& chi,
                           const RepPair& pair) {
  const Index nk = k.dim(), nl = l.dim(), m = pair.dim;
  COperator uk(nk * nl * m, nk * nl * m), ul = uk;
  for (int g = 0; g < k.group.order(); ++g) uk += kron(k.projection(g), identity(nl), pair.U[std::size_t(g)]);
  for (int h = 0; h < l.group.order(); ++h) ul += kron(identity(nk), l.projection(h), pair.V[std::size_t(h)]);
  const COperator z12 = kron(z_unitary(k, l, chi), identity(m));
  return distance(COperator(uk * ul * z12), COperator(ul * uk));
}

CrossedProduct build_via_covariant(const CovariantRep& cov_c, const CovariantRep& cov_d, const Bicharacter& chi,
                                   const Tolerance& tol) {
  require_matching_groups(cov_c.algebra, cov_d.algebra, chi);
  for (const auto* rep : {&cov_c, &cov_d}) {
    const CovariantReport r = check_covariant(*rep, tol);
    if (!r.faithful) throw std::invalid_argument("covariant representation is not faithful");
    if (!r.passed(tol)) throw std::invalid_argument("covariant representation fails its axioms");
  }
  const Index nk = cov_c.space.dim(), nl = cov_d.space.dim();
  const COperator z = z_unitary(cov_c.space, cov_d.space, chi), zs = adjoint(z);
  std::vector<COperator> ic, id;
  for (const auto& p : cov_c.images) ic.push_back(kron(p, identity(nl)));
  for (const auto& p : cov_d.images) id.push_back(product(z, kron(identity(nk), p), zs));
  return assemble(cov_c.algebra, cov_d.algebra, chi, nk * nl, std::move(ic), std::move(id), "covariant", tol);
}

std::optional<InducedMap> equivalent(const CrossedProduct& x1, const CrossedProduct& x2, const Tolerance& tol) {
  if (x1.c.carrier != x2.c.carrier || x1.d.carrier != x2.d.carrier ||
      !subspace_equal(x1.c.algebra.subspace, x2.c.algebra.subspace, tol) ||
      !subspace_equal(x1.d.algebra.subspace, x2.d.algebra.subspace, tol))
    return std::nullopt;
  return marked_iso(x1, x2, x1.c.basis, x1.d.basis, tol);
}

SymmetryResult symmetry(const CrossedProduct& x, const Tolerance& tol) {
  SymmetryResult out{build_via_heisenberg(x.d, x.c, dual_bicharacter(x.chi), tol), std::nullopt};
  const CrossedProduct& y = out.flipped;
  std::vector<COperator> v, w, gv, gw;
  for (Index i = 0; i < x.c.dimension(); ++i)
    for (Index j = 0; j < x.d.dimension(); ++j) {
      v.push_back(product(x.iota_c[std::size_t(i)], x.iota_d[std::size_t(j)]));
      w.push_back(product(y.embed_d(x.c.basis[std::size_t(i)]), y.embed_c(x.d.basis[std::size_t(j)])));
    }
  for (Index i = 0; i < x.c.dimension(); ++i) {
    gv.push_back(x.iota_c[std::size_t(i)]);
    gw.push_back(y.embed_d(x.c.basis[std::size_t(i)]));
  }
  for (Index j = 0; j < x.d.dimension(); ++j) {
    gv.push_back(x.iota_d[std::size_t(j)]);
    gw.push_back(y.embed_c(x.d.basis[std::size_t(j)]));
  }
  out.iso = find_generator_isomorphism<cd>(x.algebra, v, y.algebra, w, tol, gv, gw);
  return out;
}

PodlesSpanReport podles_span_check(const CrossedProduct& x, const Tolerance& tol) {
  if (x.witness_dim == 0) throw std::invalid_argument("podles_span_check needs a Heisenberg-route product");
  const Index l = x.witness_dim, nc = x.c.carrier, nd = x.d.carrier;
  const COperator I = identity(nc * nd);
  std::vector<COperator> spanned, target;
  for (Index a = 0; a < l; ++a) {
    const COperator e = kron(I, matrix_unit<cd>(l, l, a, 0));
    for (const auto& f : x.family.family()) spanned.push_back(product(f, e));
    for (const auto& ci : x.c.basis)
      for (const auto& dj : x.d.basis) target.push_back(kron(ci, dj, matrix_unit<cd>(l, l, a, 0)));
  }
  const Subspace s = span_basis(x.ambient, std::span<const COperator>(spanned), tol);
  const Subspace t = span_basis(x.ambient, std::span<const COperator>(target), tol);
  PodlesSpanReport r;
  r.dimension = s.dimension() * l;
  r.expected = x.c.dimension() * x.d.dimension() * l * l;
  r.equal = subspace_equal(s, t, tol) && r.dimension == r.expected;
  return r;
}

FunctorResult functor_map(const GradedMorphism& f, const GradedMorphism& g, const CrossedProduct& x1,
                          const CrossedProduct& x2, const Tolerance& tol) {
  FunctorResult out;
  out.f = check_morphism(f, tol);
  out.g = check_morphism(g, tol);
  if (!out.f.passed(tol) || !out.g.passed(tol))
    throw std::invalid_argument("functor_map: inputs are not equivariant *-homomorphisms");
  if (f.source.carrier != x1.c.carrier || g.source.carrier != x1.d.carrier || f.target.carrier != x2.c.carrier ||
      g.target.carrier != x2.d.carrier)
    throw std::invalid_argument("functor_map: morphisms do not match the crossed products");
  std::vector<COperator> v, w, gv, gw;
  for (Index i = 0; i < f.source.dimension(); ++i) {
    gv.push_back(x1.embed_c(f.source.basis[std::size_t(i)]));
    gw.push_back(x2.embed_c(f.images[std::size_t(i)]));
  }
  const std::size_t nc = gv.size();
  for (Index j = 0; j < g.source.dimension(); ++j) {
    gv.push_back(x1.embed_d(g.source.basis[std::size_t(j)]));
    gw.push_back(x2.embed_d(g.images[std::size_t(j)]));
  }
  for (std::size_t i = 0; i < nc; ++i)
    for (std::size_t j = nc; j < gv.size(); ++j) {
      v.push_back(product(gv[i], gv[j]));
      w.push_back(product(gw[i], gw[j]));
    }
  out.map = induced_homomorphism<cd>(x1.algebra.subspace, v, x2.algebra.subspace, w, tol, gv, gw);
  if (!out.map) throw std::invalid_argument("functor_map: induced map is not well defined");
  out.injective = out.map->injective;
  out.surjective = out.map->surjective;
  out.consistent = (!(out.f.injective && out.g.injective) || out.injective) &&
                   (!(out.f.surjective && out.g.surjective) || out.surjective);
  return out;
}

ReparametrizeResult qgr_morphism_reparametrize(const GradedAlgebra& c, const GradedAlgebra& d, const GroupHom& f,
                                               const GroupHom& g, const Bicharacter& chi2, const Tolerance& tol) {
  ReparametrizeResult r{build_via_heisenberg(transport_grading(c, f, tol), transport_grading(d, g, tol), chi2, tol),
                        build_via_heisenberg(c, d, pullback(chi2, f, g), tol), std::nullopt};
  r.iso = marked_iso(r.transported, r.pulled, c.basis, d.basis, tol);
  return r;
}

ReparametrizeResult reduce_to_a(const GradedAlgebra& c, const GradedAlgebra& d, const Bicharacter& chi,
                                const Tolerance& tol) {
  return qgr_morphism_reparametrize(c, d, GroupHom::identity(chi.left()), induced_hom_right(chi),
                                    canonical_pairing(chi.left()), tol);
}

ReparametrizeResult reduce_to_b(const GradedAlgebra& c, const GradedAlgebra& d, const Bicharacter& chi,
                                const Tolerance& tol) {
  // transpose (not dual): T(b, a) = χ(a, b)
  std::vector<std::vector<int>> t(std::size_t(chi.right().rank()), std::vector<int>(std::size_t(chi.left().rank())));
  for (int i = 0; i < chi.left().rank(); ++i)
    for (int j = 0; j < chi.right().rank(); ++j) t[std::size_t(j)][std::size_t(i)] = chi.exponents()[std::size_t(i)][std::size_t(j)];
  const GroupHom f = induced_hom_right(Bicharacter(chi.right(), chi.left(), t));
  return qgr_morphism_reparametrize(c, d, f, GroupHom::identity(chi.right()), canonical_pairing(chi.right()), tol);
}

std::optional<InducedMap> associativity_check(const GradedAlgebra& c0, const GradedAlgebra& c, const GradedAlgebra& d0,
                                              const GradedAlgebra& d, const Bicharacter& chi, const Tolerance& tol) {
  for (int deg : c0.degree)
    if (deg != 0) throw std::invalid_argument("associativity_check: C0 must be trivially graded");
  for (int deg : d0.degree)
    if (deg != 0) throw std::invalid_argument("associativity_check: D0 must be trivially graded");
  const CrossedProduct x = build_via_heisenberg(tensor(c0, c, tol), tensor(d0, d, tol), chi, tol);
  const CrossedProduct y = build_via_heisenberg(c, d, chi, tol);
  const COperator Ic0 = identity(c0.carrier), Id0 = identity(d0.carrier);
  std::vector<COperator> v, w, gv, gw;
  std::vector<COperator> xc, xd, yc, yd;
  for (const auto& a : c0.basis)
    for (const auto& ci : c.basis) {
      xc.push_back(x.embed_c(kron(a, ci)));
      yc.push_back(kron(a, Id0, y.embed_c(ci)));
    }
  for (const auto& b : d0.basis)
    for (const auto& dj : d.basis) {
      xd.push_back(x.embed_d(kron(b, dj)));
      yd.push_back(kron(Ic0, b, y.embed_d(dj)));
    }
  for (std::size_t i = 0; i < xc.size(); ++i)
    for (std::size_t j = 0; j < xd.size(); ++j) {
      v.push_back(product(xc[i], xd[j]));
      w.push_back(product(yc[i], yd[j]));
    }
  gv = xc;
  gv.insert(gv.end(), xd.begin(), xd.end());
  gw = yc;
  gw.insert(gw.end(), yd.begin(), yd.end());
  AlgebraBasis target{span_basis(c0.carrier * d0.carrier * y.ambient, std::span<const COperator>(w), tol), true};
  return find_generator_isomorphism<cd>(x.algebra, v, target, w, tol, gv, gw);
}

}  // namespace qtwist
