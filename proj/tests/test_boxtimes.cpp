#include "qtwist/boxtimes.hpp"

#include <gtest/gtest.h>

using namespace qtwist;

namespace {

struct Case {
  GradedAlgebra c, d;
  Bicharacter chi;
};

std::vector<Case> cases(const Tolerance& tol) {
  const FinAbGroup z2({2}), z3({3}), z4({4}), k4({2, 2});
  return {
      {group_algebra(z2, tol), group_algebra(z2, tol), Bicharacter(z2, z2, {{1}})},
      {matrix_labels(z3, {0, 1}, {}, tol), function_algebra(z3, tol), Bicharacter(z3, z3, {{1}})},
      {group_algebra(z4, tol), matrix_labels(z2, {0, 1, 1}, {2, 1}, tol), Bicharacter(z4, z2, {{1}})},
      {function_algebra(k4, tol), group_algebra(z4, tol), Bicharacter(k4, z4, {{1}, {1}})},
      {matrix_labels(z4, {0, 3}, {}, tol), group_algebra(z3, tol), Bicharacter::trivial(z4, z3)},
  };
}

}  // namespace

TEST(Boxtimes, CliffordProductIsM2) {
  const Tolerance tol;
  const FinAbGroup z2({2});
  const CrossedProduct x = build_via_heisenberg(group_algebra(z2, tol), group_algebra(z2, tol), Bicharacter(z2, z2, {{1}}), tol);
  EXPECT_TRUE(x.checks.passed(tol));
  EXPECT_EQ(x.dimension(), 4);
  EXPECT_EQ(center(x.algebra, tol).dimension(), 1);
  // the two generators anticommute
  const COperator a = x.embed_c(translation(z2, 1)), b = x.embed_d(translation(z2, 1));
  EXPECT_LT(operator_norm(COperator(product(a, b) + product(b, a))), 1e-12);
}

TEST(Boxtimes, DimensionLawAndCommutation) {
  const Tolerance tol;
  for (const auto& k : cases(tol)) {
    const CrossedProduct x = build_via_heisenberg(k.c, k.d, k.chi, tol);
    SCOPED_TRACE(k.c.name + " x " + k.d.name);
    EXPECT_TRUE(x.checks.passed(tol));
    EXPECT_EQ(x.dimension(), k.c.dimension() * k.d.dimension());
    EXPECT_TRUE(is_star_subalgebra(x.algebra.subspace, tol));
    // ι_D(d) ι_C(c) = conj χ(g, h) ι_C(c) ι_D(d) on homogeneous elements
    for (std::size_t i = 0; i < k.c.basis.size(); ++i)
      for (std::size_t j = 0; j < k.d.basis.size(); ++j) {
        const cd phase = std::conj(k.chi.evaluate_index(k.c.degree[i], k.d.degree[j]));
        const COperator lhs = product(x.iota_d[j], x.iota_c[i]);
        const COperator rhs = phase * product(x.iota_c[i], x.iota_d[j]);
        EXPECT_LT(distance(lhs, rhs), 1e-12);
      }
  }
}

TEST(Boxtimes, TrivialBicharacterGivesTensorProduct) {
  const Tolerance tol;
  const FinAbGroup z3({3});
  const GradedAlgebra c = matrix_labels(z3, {0, 1}, {}, tol), d = group_algebra(z3, tol);
  const CrossedProduct x = build_via_heisenberg(c, d, Bicharacter::trivial(z3, z3), tol);
  std::vector<COperator> w;
  for (const auto& a : c.basis)
    for (const auto& b : d.basis) w.push_back(kron(a, b));
  const AlgebraBasis t{span_basis(w, tol), true};
  EXPECT_TRUE(find_generator_isomorphism<cd>(x.algebra, x.family.family(), t, w, tol).has_value());
  // with a non-trivial χ the same assignment is not multiplicative
  const CrossedProduct y = build_via_heisenberg(c, d, Bicharacter(z3, z3, {{1}}), tol);
  EXPECT_FALSE(find_generator_isomorphism<cd>(y.algebra, y.family.family(), t, w, tol).has_value());
}

TEST(Boxtimes, WitnessPairsAgree) {
  const Tolerance tol;
  for (const auto& k : cases(tol)) {
    const CrossedProduct a = build_via_heisenberg(k.c, k.d, k.chi, tol);
    const CrossedProduct b = build_via_heisenberg(k.c, k.d, k.chi, composite_heisenberg(k.chi), tol);
    const CrossedProduct c = build_via_heisenberg(k.c, k.d, k.chi, amplified(canonical_heisenberg(k.chi), 3), tol);
    const auto ab = equivalent(a, b, tol), ac = equivalent(a, c, tol);
    ASSERT_TRUE(ab && ac);
    EXPECT_LT(ab->certificate.multiplicativity, 1e-10);
    EXPECT_LT(ac->certificate.multiplicativity, 1e-10);
  }
}

TEST(Boxtimes, CovariantRouteAgrees) {
  const Tolerance tol;
  for (const auto& k : cases(tol)) {
    const CovariantRep rc = canonical_covariant_rep(k.c), rd = canonical_covariant_rep(k.d);
    EXPECT_LT(z_identity_residual(rc.space, rd.space, k.chi, canonical_heisenberg(k.chi)), 1e-12);
    const CrossedProduct y = build_via_covariant(rc, rd, k.chi, tol);
    EXPECT_TRUE(y.checks.passed(tol));
    EXPECT_TRUE(equivalent(build_via_heisenberg(k.c, k.d, k.chi, tol), y, tol).has_value());
  }
}

TEST(Boxtimes, ZUnitaryIsBlockScalar) {
  const FinAbGroup z3({3});
  const Bicharacter chi(z3, z3, {{1}});
  const GradedHilbertSpace k{z3, {0, 1}}, l{z3, {2}};
  const COperator z = z_unitary(k, l, chi);
  ASSERT_EQ(z.rows(), 2);
  EXPECT_LT(std::abs(z.coeff(0, 0) - 1.0), 1e-14);
  EXPECT_LT(std::abs(z.coeff(1, 1) - std::conj(chi.evaluate({1}, {2}))), 1e-14);
}

TEST(Boxtimes, SymmetryWithDualBicharacter) {
  const Tolerance tol;
  for (const auto& k : cases(tol)) {
    const SymmetryResult s = symmetry(build_via_heisenberg(k.c, k.d, k.chi, tol), tol);
    EXPECT_TRUE(s.iso.has_value());
    EXPECT_EQ(s.flipped.chi, dual_bicharacter(k.chi));
  }
}

TEST(Boxtimes, PodlesSpan) {
  const Tolerance tol;
  for (const auto& k : cases(tol)) {
    const CrossedProduct x = build_via_heisenberg(k.c, k.d, k.chi, tol);
    const PodlesSpanReport r = podles_span_check(x, tol);
    EXPECT_TRUE(r.equal);
    EXPECT_EQ(r.dimension, r.expected);
    EXPECT_EQ(r.expected, k.c.dimension() * k.d.dimension() * x.witness_dim * x.witness_dim);
  }
}

TEST(Boxtimes, FunctorOnInclusion) {
  const Tolerance tol;
  const FinAbGroup z2({2});
  const Bicharacter chi(z2, z2, {{1}});
  const GradedAlgebra c = group_algebra(z2, tol), c2 = matrix_labels(z2, {0, 1}, {}, tol);
  const GradedAlgebra d = function_algebra(z2, tol);
  // λ_1 ↦ σx is an equivariant unital embedding C*(Z/2) → M2
  std::vector<COperator> img;
  for (std::size_t i = 0; i < c.basis.size(); ++i)
    img.push_back(c.degree[i] == 0 ? COperator(c.basis[i].coeff(0, 0) * identity(2))
                                   : COperator(c.basis[i].coeff(1, 0) * (matrix_unit(2, 2, 0, 1) + matrix_unit(2, 2, 1, 0))));
  const GradedMorphism f{c, c2, img}, g{d, d, d.basis};
  const FunctorResult r =
      functor_map(f, g, build_via_heisenberg(c, d, chi, tol), build_via_heisenberg(c2, d, chi, tol), tol);
  ASSERT_TRUE(r.map.has_value());
  EXPECT_TRUE(r.injective);
  EXPECT_FALSE(r.surjective);
  EXPECT_TRUE(r.consistent);
}

TEST(Boxtimes, FunctorRejectsNonEquivariantMap) {
  const Tolerance tol;
  const FinAbGroup z3({3});
  const Bicharacter chi(z3, z3, {{1}});
  const GradedAlgebra c = matrix_labels(z3, {0, 1}, {}, tol), d = group_algebra(z3, tol);
  const COperator s = matrix_unit(2, 2, 0, 1) + matrix_unit(2, 2, 1, 0);
  std::vector<COperator> img;
  for (const auto& x : c.basis) img.push_back(product(product(s, x), s));
  const CrossedProduct x = build_via_heisenberg(c, d, chi, tol);
  EXPECT_THROW(functor_map(GradedMorphism{c, c, img}, GradedMorphism{d, d, d.basis}, x, x, tol), std::invalid_argument);
}

TEST(Boxtimes, ReductionToCanonicalPairing) {
  const Tolerance tol;
  for (const auto& k : cases(tol)) {
    EXPECT_TRUE(reduce_to_a(k.c, k.d, k.chi, tol).iso.has_value());
    EXPECT_TRUE(reduce_to_b(k.c, k.d, k.chi, tol).iso.has_value());
  }
}

TEST(Boxtimes, ReparametrizeAlongHomomorphisms) {
  const Tolerance tol;
  const FinAbGroup z2({2}), z4({4});
  // χ = χ₂ ∘ (f × id) with f: Z/2 → Z/4, 1 ↦ 2
  const auto r = qgr_morphism_reparametrize(group_algebra(z2, tol), group_algebra(z4, tol), GroupHom::make(z2, z4, {{2}}),
                                            GroupHom::identity(z4), Bicharacter(z4, z4, {{1}}), tol);
  EXPECT_TRUE(r.iso.has_value());
  // χ(1, b) = i^{2b} = (−1)^b
  EXPECT_LT(std::abs(r.pulled.chi.evaluate({1}, {1}) + 1.0), 1e-14);
  EXPECT_LT(std::abs(r.pulled.chi.evaluate({1}, {2}) - 1.0), 1e-14);
}

TEST(Boxtimes, AssociativityWithTriviallyGradedFactors) {
  const Tolerance tol;
  const FinAbGroup z2({2});
  const GradedAlgebra m2 = trivially_graded(z2, {matrix_unit(2, 2, 0, 1)}, tol, "M2");
  const GradedAlgebra one = trivially_graded(z2, {identity(1)}, tol, "C");
  EXPECT_TRUE(associativity_check(m2, group_algebra(z2, tol), one, group_algebra(z2, tol), Bicharacter(z2, z2, {{1}}), tol)
                  .has_value());
  EXPECT_THROW(associativity_check(group_algebra(z2, tol), group_algebra(z2, tol), one, group_algebra(z2, tol),
                                   Bicharacter(z2, z2, {{1}}), tol),
               std::invalid_argument);
}

TEST(Boxtimes, RejectsMismatchedInputs) {
  const Tolerance tol;
  const FinAbGroup z2({2}), z3({3});
  const Bicharacter chi(z2, z2, {{1}});
  EXPECT_THROW(build_via_heisenberg(group_algebra(z3, tol), group_algebra(z2, tol), chi, tol), std::invalid_argument);
  // the canonical pair for the trivial bicharacter is not a χ-Heisenberg pair
  EXPECT_THROW(build_via_heisenberg(group_algebra(z2, tol), group_algebra(z2, tol), chi,
                                    canonical_heisenberg(Bicharacter::trivial(z2, z2)), tol),
               std::invalid_argument);
}
