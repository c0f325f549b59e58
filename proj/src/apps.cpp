#include "qtwist/apps.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>

namespace qtwist {

namespace {

constexpr double kDrop = 1e-12;

using Ops = std::vector<COperator>;

// coefficients of b_i b_k and b_i* in the homogeneous basis
struct AlgebraConstants {
  std::vector<std::vector<CVector>> mult;
  std::vector<CVector> star;
};

AlgebraConstants constants_of(const GradedAlgebra& a) {
  AlgebraConstants k;
  const Index n = a.dimension();
  k.mult.resize(std::size_t(n));
  for (Index i = 0; i < n; ++i) {
    const auto& bi = a.basis[std::size_t(i)];
    k.star.push_back(a.coefficients(adjoint(bi)));
    for (Index j = 0; j < n; ++j) k.mult[std::size_t(i)].push_back(a.coefficients(product(bi, a.basis[std::size_t(j)])));
  }
  return k;
}

// Table on c_i ⊗ d_j (index i * dim D + j) with the product scaled by
// prod(i, j, k, l) and the adjoint by star(i, j).
template <typename Prod, typename Star>
StructureTable product_table(const GradedAlgebra& c, const GradedAlgebra& d, Prod prod, Star star) {
  const Index nc = c.dimension(), nd = d.dimension(), n = nc * nd;
  const AlgebraConstants kc = constants_of(c), kd = constants_of(d);
  StructureTable t;
  t.dim = n;
  t.star = CMatrix::Zero(n, n);
  for (Index i = 0; i < nc; ++i)
    for (Index j = 0; j < nd; ++j) {
      std::vector<Eigen::Triplet<cd>> trip;
      for (Index k = 0; k < nc; ++k)
        for (Index l = 0; l < nd; ++l) {
          const cd f = prod(i, j, k, l);
          const CVector& x = kc.mult[std::size_t(i)][std::size_t(k)];
          const CVector& y = kd.mult[std::size_t(j)][std::size_t(l)];
          for (Index m = 0; m < nc; ++m) {
            if (std::abs(x(m)) < kDrop) continue;
            for (Index q = 0; q < nd; ++q)
              if (std::abs(y(q)) >= kDrop) trip.emplace_back(m * nd + q, k * nd + l, f * x(m) * y(q));
          }
        }
      COperator left(n, n);
      left.setFromTriplets(trip.begin(), trip.end());
      t.left.push_back(std::move(left));
      const cd s = star(i, j);
      for (Index m = 0; m < nc; ++m)
        for (Index q = 0; q < nd; ++q) t.star(m * nd + q, i * nd + j) = s * kc.star[std::size_t(i)](m) * kd.star[std::size_t(j)](q);
    }
  return t;
}

bool is_z2(const FinAbGroup& g) { return g.cycles() == std::vector<int>{2}; }

Ops matrix_units(Index n) {
  Ops out;
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) out.push_back(matrix_unit<cd>(n, n, i, j));
  return out;
}

AlgebraBasis full_matrix_algebra(Index n, const Tolerance& tol) {
  return {span_basis(n, std::span<const COperator>(matrix_units(n)), tol), true};
}

Subspace span_of(Index n, const Ops& xs, const Tolerance& tol) {
  return span_basis(n, std::span<const COperator>(xs), tol);
}

// M₂(C) on C² ⊗ C^n graded by Ad_U ∘ (id ⊗ γ), U = E₁₁⊗1 + E₂₂⊗u.
GradedAlgebra linking_algebra(const GradedAlgebra& c, const std::optional<COperator>& u, const Tolerance& tol) {
  const Index n = c.carrier, m = c.group.order();
  Ops elems;
  for (Index a = 0; a < 2; ++a)
    for (Index b = 0; b < 2; ++b)
      for (const auto& x : c.basis) elems.push_back(kron(matrix_unit<cd>(2, 2, a, b), x));
  CoactionMap gamma{c.group, 2 * n, span_of(2 * n, elems, tol), {}};
  const CoactionMap inner = grading_to_coaction(c);
  const COperator U = pruned(COperator(kron(matrix_unit<cd>(2, 2, 0, 0), identity(n * m)) +
                                       kron(matrix_unit<cd>(2, 2, 1, 1), u ? *u : identity(n * m))));
  const COperator Us = adjoint(U);
  for (const auto& e : gamma.source.basis()) {
    COperator img(2 * n * m, 2 * n * m);
    for (Index a = 0; a < 2; ++a)
      for (Index b = 0; b < 2; ++b) {
        const COperator blk = first_leg_block(e, 2, n, a, b);
        if (blk.nonZeros()) img += kron(matrix_unit<cd>(2, 2, a, b), inner.apply(blk));
      }
    gamma.images.push_back(product(U, img, Us));
  }
  GradedAlgebra out = coaction_to_grading(gamma, tol);
  out.name = "M2(" + c.name + ")";
  return out;
}

// Carries elements of `from` to `to` through the corners of a linking
// product: ι(E₁₁⊗a)ι(b) ↦ S(·)S* with S = ι(E₂₁⊗1), then read in the
// E₂₂ corner.  The C side is twisted when c_side, the D side otherwise.
Ops linking_transport(const CrossedProduct& from, const CrossedProduct& to, const std::optional<COperator>& cocycle,
                      bool c_side, const Ops& xs, const Tolerance& tol) {
  const GradedAlgebra& active = c_side ? from.c : from.d;
  const GradedAlgebra link = linking_algebra(active, cocycle, tol);
  const CrossedProduct lx = c_side ? build_via_heisenberg(link, from.d, from.chi, tol)
                                   : build_via_heisenberg(from.c, link, from.chi, tol);
  const COperator e11 = matrix_unit<cd>(2, 2, 0, 0), e22 = matrix_unit<cd>(2, 2, 1, 1);
  auto corner = [&](const CrossedProduct& x, const COperator& e) {
    Ops fam;
    for (const auto& ci : x.c.basis)
      for (const auto& dj : x.d.basis)
        fam.push_back(c_side ? product(lx.embed_c(kron(e, ci)), lx.embed_d(dj))
                             : product(lx.embed_c(ci), lx.embed_d(kron(e, dj))));
    return fam;
  };
  const Ops p = corner(from, e11);
  const Frame q(lx.ambient, corner(to, e22), tol);
  const COperator e21 = kron(matrix_unit<cd>(2, 2, 1, 0), identity(active.carrier));
  const COperator s = c_side ? lx.embed_c(e21) : lx.embed_d(e21), ss = adjoint(s);
  Ops out;
  for (const auto& x : xs) {
    const CVector a = from.family.solve(x);
    COperator y(lx.ambient, lx.ambient);
    for (Index k = 0; k < a.size(); ++k)
      if (a(k) != cd(0)) y += a(k) * p[std::size_t(k)];
    out.push_back(to.family.combine(q.solve(product(s, y, ss))));
  }
  return out;
}

CocycleReport trivial_cocycle_report(const GradedAlgebra& c) {
  CocycleReport r;
  r.density_dim = c.dimension() * c.group.order();
  r.density = true;
  return r;
}

void require_trivial(const GradedAlgebra& c, const char* what) {
  for (int deg : c.degree)
    if (deg != 0) throw std::invalid_argument(std::string(what) + " must be trivially graded");
}

Ops block_units(Index n, Index r0, Index r1, Index c0, Index c1) {
  Ops out;
  for (Index i = r0; i < r1; ++i)
    for (Index j = c0; j < c1; ++j) out.push_back(matrix_unit<cd>(n, n, i, j));
  return out;
}

}  // namespace

std::vector<std::tuple<Index, Index, Index, cd>> StructureTable::triplets() const {
  std::vector<std::tuple<Index, Index, Index, cd>> out;
  for (Index a = 0; a < dim; ++a)
    for (Index b = 0; b < dim; ++b)
      for (COperator::InnerIterator it(left[std::size_t(a)], b); it; ++it)
        if (std::abs(it.value()) >= kDrop) out.emplace_back(a, b, it.row(), it.value());
  return out;
}

TableComparison compare_table(const StructureTable& t, const std::vector<COperator>& family) {
  if (Index(family.size()) != t.dim) throw std::invalid_argument("compare_table: family size differs from the table");
  TableComparison r;
  if (family.empty()) return r;
  const Index n = family.front().rows();
  for (Index a = 0; a < t.dim; ++a) {
    const auto& fa = family[std::size_t(a)];
    COperator s(n, n);
    for (Index q = 0; q < t.dim; ++q)
      if (t.star(q, a) != cd(0)) s += t.star(q, a) * family[std::size_t(q)];
    r.star = std::max(r.star, distance(adjoint(fa), s));
    for (Index b = 0; b < t.dim; ++b) {
      COperator rhs(n, n);
      for (COperator::InnerIterator it(t.left[std::size_t(a)], b); it; ++it) rhs += it.value() * family[std::size_t(it.row())];
      r.product = std::max(r.product, distance(product(fa, family[std::size_t(b)]), rhs));
    }
  }
  return r;
}

double associativity_residual(const StructureTable& t) {
  double worst = 0;
  for (Index a = 0; a < t.dim; ++a)
    for (Index b = 0; b < t.dim; ++b) {
      COperator lhs(t.dim, t.dim);
      for (COperator::InnerIterator it(t.left[std::size_t(a)], b); it; ++it) lhs += it.value() * t.left[std::size_t(it.row())];
      worst = std::max(worst, distance(lhs, product(t.left[std::size_t(a)], t.left[std::size_t(b)])));
    }
  return worst;
}

double star_residual(const StructureTable& t) {
  const Index n = t.dim;
  double worst = (t.star * t.star.conjugate() - CMatrix::Identity(n, n)).norm();
  std::vector<std::vector<std::pair<Index, cd>>> cols(static_cast<std::size_t>(n));
  for (Index a = 0; a < n; ++a)
    for (Index q = 0; q < n; ++q)
      if (std::abs(t.star(q, a)) >= kDrop) cols[std::size_t(a)].push_back({q, t.star(q, a)});
  for (Index a = 0; a < n; ++a)
    for (Index b = 0; b < n; ++b) {
      // (e_a e_b)* against e_b* e_a*
      const CVector ab = to_dense(COperator(t.left[std::size_t(a)].col(b)));
      const CVector lhs = t.star * ab.conjugate();
      CVector rhs = CVector::Zero(n);
      for (const auto& [s, x] : cols[std::size_t(b)])
        for (const auto& [r, y] : cols[std::size_t(a)]) rhs += x * y * to_dense(COperator(t.left[std::size_t(s)].col(r)));
      worst = std::max(worst, (lhs - rhs).norm());
    }
  return worst;
}

StructureTable koszul_table(const GradedAlgebra& c, const GradedAlgebra& d) {
  if (!is_z2(c.group) || !is_z2(d.group)) throw std::invalid_argument("koszul_table: gradings must be over Z/2");
  auto sign = [](int x, int y) { return (x * y) % 2 ? cd(-1) : cd(1); };
  return product_table(
      c, d,
      [&](Index, Index j, Index k, Index) { return sign(c.degree[std::size_t(k)], d.degree[std::size_t(j)]); },
      [&](Index i, Index j) { return sign(c.degree[std::size_t(i)], d.degree[std::size_t(j)]); });
}

StructureTable twisted_table(const GradedAlgebra& c, const GradedAlgebra& d, const Bicharacter& chi) {
  if (!(chi.left() == c.group) || !(chi.right() == d.group))
    throw std::invalid_argument("twisted_table: bicharacter groups do not match the gradings");
  return product_table(
      c, d,
      [&](Index, Index j, Index k, Index) {
        return std::conj(chi.evaluate_index(c.degree[std::size_t(k)], d.degree[std::size_t(j)]));
      },
      [&](Index i, Index j) { return std::conj(chi.evaluate_index(c.degree[std::size_t(i)], d.degree[std::size_t(j)])); });
}

double psi_cocycle_residual(const Bicharacter& chi) {
  const FinAbGroup& g = chi.left();
  const FinAbGroup& h = chi.right();
  const int ng = g.order(), nh = h.order(), n = ng * nh;
  // x = (x / nh, x % nh) ∈ G × H
  auto add = [&](int x, int y) { return g.add_index(x / nh, y / nh) * nh + h.add_index(x % nh, y % nh); };
  auto psi = [&](int x, int y) { return std::conj(chi.evaluate_index(y / nh, x % nh)); };
  double worst = 0;
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      for (int z = 0; z < n; ++z)
        worst = std::max(worst, std::abs(psi(x, y) * psi(add(x, y), z) - psi(y, z) * psi(x, add(y, z))));
  return worst;
}

SkewTensorResult skew_tensor(const GradedAlgebra& c, const GradedAlgebra& d, const Tolerance& tol) {
  if (!is_z2(c.group) || !is_z2(d.group)) throw std::invalid_argument("skew_tensor: gradings must be over Z/2");
  const Bicharacter chi(c.group, d.group, {{1}});
  SkewTensorResult r{koszul_table(c, d), build_via_heisenberg(c, d, chi, tol), {}, {}, {}, false, 0};
  r.comparison = compare_table(r.table, r.product.family.family());

  // c ⊗̂ d ↦ (φ(c) ε^{deg d}) ⊗ d with φ(c) = c ⊗ λ_g and ε the grading on ℓ²(Z/2)
  const CovariantRep cov = canonical_covariant_rep(c);
  const COperator eps = kron(identity(c.carrier), multiplication({cd(1), cd(-1)}));
  for (Index i = 0; i < c.dimension(); ++i)
    for (Index j = 0; j < d.dimension(); ++j) {
      const auto& phi = cov.images[std::size_t(i)];
      r.representation.push_back(kron(d.degree[std::size_t(j)] ? product(phi, eps) : phi, d.basis[std::size_t(j)]));
    }
  r.representation_check = compare_table(r.table, r.representation);
  r.representation_faithful =
      span_rank<cd>(2 * c.carrier * d.carrier, r.representation, tol) == r.table.dim;
  const Ops gens = r.product.generators();
  r.center_dim = center<cd>(r.product.algebra, std::span<const COperator>(gens), tol).dimension();
  return r;
}

TorusResult finite_torus(int n, int k, const Tolerance& tol) {
  if (n < 2 || k < 0 || k >= n) throw std::invalid_argument("finite_torus: need N >= 2 and 0 <= k < N");
  const FinAbGroup g({n});
  const Bicharacter chi(g, g, {{k}});
  const GradedAlgebra c = group_algebra(g, tol);
  TorusResult r{n, k, build_via_heisenberg(c, c, chi, tol), 0, 0, 0, 0, std::nullopt};
  const CrossedProduct& x = r.product;
  r.dim = x.dimension();
  const Ops gens = x.generators();
  r.center_dim = center<cd>(x.algebra, std::span<const COperator>(gens), tol).dimension();
  const std::int64_t gk = gcd64(k, n);
  r.expected_center_dim = Index(gk * gk);

  const COperator u = x.embed_c(translation(g, 1)), v = x.embed_d(translation(g, 1));
  const cd q = std::polar(1.0, -2 * std::numbers::pi * double(k) / double(n));
  r.relation = distance(product(v, u), COperator(q * product(u, v)));
  COperator un = identity(x.ambient), vn = un;
  for (int i = 0; i < n; ++i) {
    un = product(un, u);
    vn = product(vn, v);
  }
  r.relation = std::max({r.relation, distance(un, identity(x.ambient)), distance(vn, identity(x.ambient))});

  if (gk == 1) {
    const RepPair p = canonical_heisenberg(chi);
    Ops fam, img, gv, gw;
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) {
        fam.push_back(product(x.embed_c(translation(g, a)), x.embed_d(translation(g, b))));
        img.push_back(product(p.U[std::size_t(a)], p.V[std::size_t(b)]));
      }
    for (int a = 0; a < n; ++a) {
      gv.push_back(x.embed_c(translation(g, a)));
      gw.push_back(p.U[std::size_t(a)]);
      gv.push_back(x.embed_d(translation(g, a)));
      gw.push_back(p.V[std::size_t(a)]);
    }
    r.matrix_iso = find_generator_isomorphism<cd>(x.algebra, fam, full_matrix_algebra(n, tol), img, tol, gv, gw)
                       .has_value();
  }
  return r;
}

ReducedCrossedProduct reduced_crossed_product(const GradedAlgebra& c, const Tolerance& tol) {
  const FinAbGroup& g = c.group;
  const GradedAlgebra d = function_algebra(g, tol);
  const Bicharacter chi = reduced_bicharacter(g);
  Ops ic, id;
  for (Index k = 0; k < c.dimension(); ++k)
    ic.push_back(kron(c.basis[std::size_t(k)], translation(g, c.degree[std::size_t(k)])));
  for (const auto& e : d.basis) id.push_back(kron(identity(c.carrier), e));
  ReducedCrossedProduct r{build_via_heisenberg(c, d, chi, tol),
                          assemble(c, d, chi, c.carrier * g.order(), std::move(ic), std::move(id), "direct", tol),
                          std::nullopt, false};
  r.iso = equivalent(r.boxtimes, r.direct, tol);
  const Index want = c.dimension() * g.order();
  r.dimension_law = r.direct.dimension() == want && r.boxtimes.dimension() == want;
  return r;
}

std::optional<InducedMap> regular_crossed_product_iso(const ReducedCrossedProduct& r, const Tolerance& tol) {
  const CrossedProduct& x = r.direct;
  const Index n = x.c.group.order();
  if (x.c.carrier != n) return std::nullopt;
  Ops img, gw;
  for (const auto& ci : x.c.basis)
    for (const auto& dj : x.d.basis) img.push_back(product(ci, dj));
  gw = x.c.basis;
  gw.insert(gw.end(), x.d.basis.begin(), x.d.basis.end());
  const Ops gv = x.generators();
  return find_generator_isomorphism<cd>(x.algebra, x.family.family(), full_matrix_algebra(n, tol), img, tol, gv, gw);
}

DualCoactionResult dual_coaction(const ReducedCrossedProduct& r, const Tolerance& tol) {
  const CrossedProduct& x = r.direct;
  const FinAbGroup& g = x.d.group;
  const Index nd = x.d.dimension();
  DegreePieces pieces;
  for (Index i = 0; i < x.c.dimension(); ++i)
    for (Index j = 0; j < nd; ++j)
      pieces.push_back({x.d.degree[std::size_t(j)], {x.family.family()[std::size_t(i * nd + j)]}});
  DualCoactionResult out{make_graded(g, x.ambient, pieces, tol, "dual"), {}, {}};
  out.grading = check_grading(out.graded, tol);
  const GradedAlgebra& a = out.graded;
  Ops images;
  for (const auto& e : a.algebra.subspace.basis()) {
    const CVector coef = a.coefficients(e);
    COperator img(g.order() * a.carrier, g.order() * a.carrier);
    for (Index k = 0; k < a.dimension(); ++k)
      if (coef(k) != cd(0)) img += coef(k) * kron(translation(g, a.degree[std::size_t(k)]), a.basis[std::size_t(k)]);
    images.push_back(pruned(img));
  }
  out.coaction = verify_left_coaction(g, a.algebra.subspace, images, tol);
  return out;
}

RieffelResult rieffel_twist_compare(const GradedAlgebra& c, const GradedAlgebra& d, const Bicharacter& chi,
                                    const Tolerance& tol) {
  RieffelResult r{twisted_table(c, d, chi), build_via_heisenberg(c, d, chi, tol), {}, 0, 0, 0, false};
  r.comparison = compare_table(r.table, r.product.family.family());
  r.associativity = associativity_residual(r.table);
  r.cocycle = psi_cocycle_residual(chi);
  r.star = star_residual(r.table);
  r.iso = r.comparison.matches(tol.eps_eq) && r.product.family.independent();
  return r;
}

double tensor_membership_residual(const COperator& y, const Subspace& a, const Subspace& b) {
  const Index p = a.ambient_dim(), q = b.ambient_dim();
  if (y.rows() != p * q || y.cols() != p * q) throw std::invalid_argument("tensor_membership_residual: shape");
  std::vector<std::pair<Index, Index>> first, second;
  for (Index c = 0; c < y.outerSize(); ++c)
    for (COperator::InnerIterator it(y, c); it; ++it) {
      first.push_back({it.row() / q, c / q});
      second.push_back({it.row() % q, c % q});
    }
  for (auto* v : {&first, &second}) {
    std::sort(v->begin(), v->end());
    v->erase(std::unique(v->begin(), v->end()), v->end());
  }
  double worst = 0;
  for (const auto& [r, c] : first) worst = std::max(worst, b.residual(first_leg_block(y, p, q, r, c)));
  for (const auto& [r, c] : second) worst = std::max(worst, a.residual(second_leg_block(y, p, q, r, c)));
  return worst;
}

EmbedInReducedResult embed_in_reduced(const GradedAlgebra& c, const GradedAlgebra& d, const Bicharacter& chi,
                                      const Tolerance& tol) {
  EmbedInReducedResult r{reduced_crossed_product(c, tol), reduced_crossed_product(d, tol), {}, 0, std::nullopt};
  const Index ng = c.group.order(), nh = d.group.order();
  const Index p = c.carrier * ng, q = d.carrier * nh;
  // X = multiplication by χ(k, l) on the ℓ²(G) and ℓ²(H) legs
  std::vector<cd> diag;
  for (Index a = 0; a < c.carrier; ++a)
    for (Index k = 0; k < ng; ++k)
      for (Index b = 0; b < d.carrier; ++b)
        for (Index l = 0; l < nh; ++l) diag.push_back(chi.evaluate_index(int(k), int(l)));
  const COperator x = multiplication(diag), xs = adjoint(x);
  Ops ic, id;
  for (const auto& e : r.c_side.direct.iota_c) ic.push_back(kron(e, identity(q)));
  for (const auto& e : r.d_side.direct.iota_c) id.push_back(product(xs, kron(identity(p), e), x));
  r.image = assemble(c, d, chi, p * q, std::move(ic), std::move(id), "reduced-embedding", tol);
  for (const auto& y : r.image.generators())
    r.containment = std::max(r.containment, tensor_membership_residual(y, r.c_side.direct.algebra.subspace,
                                                                        r.d_side.direct.algebra.subspace));
  r.iso = equivalent(build_via_heisenberg(c, d, chi, tol), r.image, tol);
  return r;
}

ConjugacyResult cocycle_conjugacy(const GradedAlgebra& c, const std::optional<COperator>& u, const GradedAlgebra& d,
                                  const std::optional<COperator>& v, const Bicharacter& chi, const Tolerance& tol) {
  ConjugacyResult r;
  r.u_report = u ? check_cocycle(c, *u, tol) : trivial_cocycle_report(c);
  r.v_report = v ? check_cocycle(d, *v, tol) : trivial_cocycle_report(d);
  if (!r.u_report.passed(tol)) throw std::invalid_argument("cocycle_conjugacy: u is not a cocycle");
  if (!r.v_report.passed(tol)) throw std::invalid_argument("cocycle_conjugacy: v is not a cocycle");
  const GradedAlgebra cu = u ? twist_by_cocycle(c, *u, tol) : c;
  const GradedAlgebra dv = v ? twist_by_cocycle(d, *v, tol) : d;
  r.original = build_via_heisenberg(c, d, chi, tol);
  const CrossedProduct mid = u ? build_via_heisenberg(cu, d, chi, tol) : r.original;
  r.twisted = v ? build_via_heisenberg(cu, dv, chi, tol) : mid;

  const Ops fam = r.original.family.family(), gens = r.original.generators();
  Ops img = fam, gimg = gens;
  if (u) {
    img = linking_transport(r.original, mid, u, true, img, tol);
    gimg = linking_transport(r.original, mid, u, true, gimg, tol);
  }
  if (v) {
    img = linking_transport(mid, r.twisted, v, false, img, tol);
    gimg = linking_transport(mid, r.twisted, v, false, gimg, tol);
  }
  const auto found = find_generator_isomorphism<cd>(r.original.algebra, fam, r.twisted.algebra, img, tol, gens, gimg);
  if (found) {
    r.iso = found->map;
    r.certificate = found->certificate;
    r.bijective = found->injective && found->surjective;
  }
  return r;
}

InnerResult inner_coaction_iso(const GradedAlgebra& c_trivial, const COperator& u, const GradedAlgebra& d,
                               const std::optional<COperator>& v, const Bicharacter& chi, const Tolerance& tol) {
  require_trivial(c_trivial, "inner_coaction_iso: C");
  if (v) require_trivial(d, "inner_coaction_iso: D");
  InnerResult r{cocycle_conjugacy(c_trivial, u, d, v, chi, tol), std::nullopt, {}};
  if (!r.conjugacy.iso) return r;
  const CrossedProduct& x = r.conjugacy.original;
  const Index nc = c_trivial.carrier, nd = d.carrier;
  Ops w, gw;
  for (const auto& ci : c_trivial.basis)
    for (const auto& dj : d.basis) w.push_back(kron(ci, dj));
  for (const auto& ci : c_trivial.basis) gw.push_back(kron(ci, identity(nd)));
  for (const auto& dj : d.basis) gw.push_back(kron(identity(nc), dj));
  const AlgebraBasis target{span_of(nc * nd, w, tol), true};
  const Ops gv = x.generators();
  const auto t = find_generator_isomorphism<cd>(x.algebra, x.family.family(), target, w, tol, gv, gw);
  if (!t) return r;
  const LinearMap& phi = *r.conjugacy.iso;
  const LinearMap inv{phi.target, phi.source, phi.matrix.inverse()};
  LinearMap to = compose(t->map, inv);
  const Ops yf = r.conjugacy.twisted.family.family();
  Ops img;
  for (const auto& f : yf) img.push_back(to(f));
  r.certificate = certify_homomorphism<cd>(to, yf, img);
  if (to.injective(tol) && to.surjective(tol)) r.to_tensor = std::move(to);
  return r;
}

GradedHilbertModule module_from_labels(const FinAbGroup& g, const std::vector<int>& top_labels,
                                       const std::vector<int>& bottom_labels, const Tolerance& tol) {
  if (top_labels.empty() || bottom_labels.empty()) throw std::invalid_argument("module_from_labels: empty labels");
  std::vector<int> labels = top_labels;
  labels.insert(labels.end(), bottom_labels.begin(), bottom_labels.end());
  for (int l : labels)
    if (l < 0 || l >= g.order()) throw std::invalid_argument("module_from_labels: label outside the group");
  GradedHilbertModule e;
  e.linking = matrix_labels(g, labels, {}, tol);
  e.top = Index(top_labels.size());
  e.bottom = Index(bottom_labels.size());
  const Index n = e.top + e.bottom;
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) {
      const int deg = g.add_index(labels[std::size_t(i)], g.neg_index(labels[std::size_t(j)]));
      const COperator x = matrix_unit<cd>(n, n, i, j);
      if (i < e.top && j >= e.top) {
        e.module.push_back(x);
        e.module_degree.push_back(deg);
      } else if (i >= e.top && j >= e.top) {
        e.coefficients.push_back(x);
        e.coefficient_degree.push_back(deg);
      } else if (i < e.top && j < e.top) {
        e.compacts.push_back(x);
        e.compact_degree.push_back(deg);
      }
    }
  return e;
}

ModuleCheck check_module(const GradedHilbertModule& e, const Tolerance& tol) {
  const Index n = e.linking.carrier;
  const FinAbGroup& g = e.linking.group;
  const Subspace ms = span_of(n, e.module, tol), cs = span_of(n, e.coefficients, tol);
  auto in_degree = [&](const COperator& x, int deg) { return e.linking.components[std::size_t(deg)].residual(x); };
  ModuleCheck r;
  for (std::size_t i = 0; i < e.module.size(); ++i) {
    const auto& x = e.module[i];
    const int a = e.module_degree[i];
    r.grading = std::max(r.grading, in_degree(adjoint(x), g.neg_index(a)));
    for (std::size_t j = 0; j < e.coefficients.size(); ++j) {
      const COperator p = product(x, e.coefficients[j]);
      r.right_action = std::max(r.right_action, ms.residual(p));
      r.grading = std::max(r.grading, in_degree(p, g.add_index(a, e.coefficient_degree[j])));
    }
    for (std::size_t j = 0; j < e.module.size(); ++j) {
      const COperator p = product(adjoint(x), e.module[j]);
      r.inner_product = std::max(r.inner_product, cs.residual(p));
      r.grading = std::max(r.grading, in_degree(p, g.add_index(g.neg_index(a), e.module_degree[j])));
    }
  }
  (void)tol;
  return r;
}

ModuleBoxtimesResult module_boxtimes(const GradedHilbertModule& e, const GradedHilbertModule& f, const Bicharacter& chi,
                                     const Tolerance& tol) {
  ModuleBoxtimesResult r;
  r.linking = build_via_heisenberg(e.linking, f.linking, chi, tol);
  const CrossedProduct& x = r.linking;
  const Index n = x.ambient;
  auto pairs = [&](const Ops& as, const Ops& bs) {
    Ops out;
    for (const auto& a : as)
      for (const auto& b : bs) out.push_back(product(x.embed_c(a), x.embed_d(b)));
    return out;
  };
  const Ops mf = pairs(e.module, f.module);
  r.module = span_of(n, mf, tol);
  r.coefficients = span_of(n, pairs(e.coefficients, f.coefficients), tol);
  const Ops kk = pairs(e.compacts, f.compacts);
  r.compacts = span_of(n, kk, tol);
  r.module_dim = r.module.dimension();

  const Ops cd_ = r.coefficients.basis();
  Ops inner, outer, rev;
  for (const auto& a : mf) {
    for (const auto& c : cd_) r.right_action = std::max(r.right_action, r.module.residual(product(a, c)));
    for (const auto& b : mf) {
      inner.push_back(product(adjoint(a), b));
      outer.push_back(product(a, adjoint(b)));
    }
  }
  for (const auto& y : inner) r.inner_product = std::max(r.inner_product, r.coefficients.residual(y));
  r.inner_span = subspace_equal(span_of(n, inner, tol), r.coefficients, tol);
  r.compact_equal = subspace_equal(span_of(n, outer, tol), r.compacts, tol);
  for (const auto& a : e.module)
    for (const auto& b : f.module) rev.push_back(product(x.embed_d(b), x.embed_c(a)));
  r.exchange = subspace_equal(span_of(n, rev, tol), r.module, tol);

  auto compact_algebra = [&](const GradedHilbertModule& m, const char* name) {
    DegreePieces p;
    for (std::size_t i = 0; i < m.compacts.size(); ++i) p.push_back({m.compact_degree[i], {m.compacts[i]}});
    return make_graded(m.linking.group, m.linking.carrier, p, tol, name);
  };
  const CrossedProduct kx =
      build_via_heisenberg(compact_algebra(e, "K(E)"), compact_algebra(f, "K(F)"), chi, tol);
  // K(E) and K(F) are non-unital in the linking carrier, so the legs alone are
  // not in the span; certify on all products instead.
  Ops v;
  for (const auto& a : e.compacts)
    for (const auto& b : f.compacts) v.push_back(product(kx.embed_c(a), kx.embed_d(b)));
  r.compact_iso = find_generator_isomorphism<cd>(kx.algebra, v, AlgebraBasis{r.compacts, false}, kk, tol, v, kk);
  return r;
}

CompositionResult composition_check(const FinAbGroup& g, const std::vector<std::vector<int>>& c_labels,
                                    const FinAbGroup& h, const std::vector<std::vector<int>>& d_labels,
                                    const Bicharacter& chi, const Tolerance& tol) {
  if (c_labels.size() != 3 || d_labels.size() != 3) throw std::invalid_argument("composition_check: need three blocks");
  auto flat = [](const std::vector<std::vector<int>>& ls, std::vector<Index>& starts) {
    std::vector<int> out;
    for (const auto& l : ls) {
      if (l.empty()) throw std::invalid_argument("composition_check: empty block");
      starts.push_back(Index(out.size()));
      out.insert(out.end(), l.begin(), l.end());
    }
    starts.push_back(Index(out.size()));
    return out;
  };
  std::vector<Index> cs, ds;
  const std::vector<int> cl = flat(c_labels, cs), dl = flat(d_labels, ds);
  CompositionResult r;
  r.linking = build_via_heisenberg(matrix_labels(g, cl, {}, tol), matrix_labels(h, dl, {}, tol), chi, tol);
  const CrossedProduct& x = r.linking;
  const Index nc = Index(cl.size()), nd = Index(dl.size());
  auto blocks = [&](Index a, Index b) {
    const Ops es = block_units(nc, cs[std::size_t(a)], cs[std::size_t(a) + 1], cs[std::size_t(b)], cs[std::size_t(b) + 1]);
    const Ops fs = block_units(nd, ds[std::size_t(a)], ds[std::size_t(a) + 1], ds[std::size_t(b)], ds[std::size_t(b) + 1]);
    Ops out;
    for (const auto& e : es)
      for (const auto& f : fs) out.push_back(product(x.embed_c(e), x.embed_d(f)));
    return out;
  };
  const Ops m12 = blocks(0, 1), m23 = blocks(1, 2), m13 = blocks(0, 2);
  Ops prod;
  for (const auto& a : m12)
    for (const auto& b : m23) prod.push_back(product(a, b));
  const Subspace s = span_of(x.ambient, prod, tol), t = span_of(x.ambient, m13, tol);
  r.dim = s.dimension();
  r.expected_dim = Index(c_labels[0].size() * c_labels[2].size() * d_labels[0].size() * d_labels[2].size());
  r.equal = subspace_equal(s, t, tol) && t.dimension() == r.expected_dim;
  return r;
}

}  // namespace qtwist
