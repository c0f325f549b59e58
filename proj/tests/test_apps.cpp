#include "qtwist/apps.hpp"

#include <gtest/gtest.h>

#include <numeric>

using namespace qtwist;

namespace {

const FinAbGroup z2({2}), z3({3}), z4({4});

COperator sx() { return matrix_unit(2, 2, 0, 1) + matrix_unit(2, 2, 1, 0); }

// centre of the twisted group algebra of Z/N × Z/N: u^a v^b is central
// iff ka ≡ kb ≡ 0 mod N
Index brute_force_torus_center(int n, int k) {
  Index count = 0;
  for (int a = 0; a < n; ++a) count += (k * a) % n == 0;
  return count * count;
}

}  // namespace

TEST(Apps, KoszulSignsOnCliffordBasis) {
  const Tolerance tol;
  const GradedAlgebra c = group_algebra(z2, tol);
  ASSERT_EQ(c.degree, (std::vector<int>{0, 1}));
  const StructureTable t = koszul_table(c, c);
  // e_{ij} = c_i ⊗ d_j at index 2i + j; e_1 = 1⊗λ, e_2 = λ⊗1, e_3 = λ⊗λ
  EXPECT_EQ(t.at(2, 1, 3), cd(1));   // (λ⊗1)(1⊗λ) = λ⊗λ
  EXPECT_EQ(t.at(1, 2, 3), cd(-1));  // (1⊗λ)(λ⊗1) = −λ⊗λ
  EXPECT_EQ(t.at(3, 3, 0), cd(-1));  // (λ⊗λ)² = −1
  EXPECT_EQ(t.star(3, 3), cd(-1));   // (λ⊗λ)* = −λ⊗λ
  EXPECT_LT(associativity_residual(t), 1e-14);
  EXPECT_LT(star_residual(t), 1e-14);
}

TEST(Apps, SkewTensorMatchesKoszulTable) {
  const Tolerance tol;
  for (const auto& [c, d] : {std::pair{group_algebra(z2, tol), group_algebra(z2, tol)},
                             std::pair{matrix_labels(z2, {0, 1}, {}, tol), function_algebra(z2, tol)},
                             std::pair{matrix_labels(z2, {0, 1, 1}, {}, tol), matrix_labels(z2, {0, 1}, {}, tol)}}) {
    const SkewTensorResult r = skew_tensor(c, d, tol);
    EXPECT_TRUE(r.comparison.matches(1e-10));
    EXPECT_TRUE(r.representation_check.matches(1e-10));
    EXPECT_TRUE(r.representation_faithful);
  }
  EXPECT_EQ(skew_tensor(group_algebra(z2, tol), group_algebra(z2, tol), tol).center_dim, 1);
}

TEST(Apps, TwistedTableWithTrivialCharacterIsTensorProduct) {
  const Tolerance tol;
  const GradedAlgebra c = matrix_labels(z3, {0, 1}, {}, tol), d = group_algebra(z3, tol);
  const StructureTable t = twisted_table(c, d, Bicharacter::trivial(z3, z3));
  std::vector<COperator> fam;
  for (const auto& a : c.basis)
    for (const auto& b : d.basis) fam.push_back(kron(a, b));
  EXPECT_TRUE(compare_table(t, fam).matches(1e-12));
  // a non-trivial χ changes the constants
  EXPECT_FALSE(compare_table(twisted_table(c, d, Bicharacter(z3, z3, {{1}})), fam).matches(1e-6));
}

TEST(Apps, PsiIsATwoCocycle) {
  for (const auto& chi : enumerate_bicharacters(FinAbGroup({2, 2}), z4)) EXPECT_LT(psi_cocycle_residual(chi), 1e-12);
  for (const auto& chi : enumerate_bicharacters(z3, FinAbGroup({6}))) EXPECT_LT(psi_cocycle_residual(chi), 1e-12);
}

TEST(Apps, RieffelTwistMatchesProduct) {
  const Tolerance tol;
  const Bicharacter chi(z4, z2, {{1}});
  const RieffelResult r = rieffel_twist_compare(matrix_labels(z4, {0, 1, 3}, {2, 1}, tol), group_algebra(z2, tol), chi, tol);
  EXPECT_TRUE(r.comparison.matches(1e-10));
  EXPECT_LT(r.associativity, 1e-12);
  EXPECT_LT(r.cocycle, 1e-12);
  EXPECT_LT(r.star, 1e-12);
  EXPECT_TRUE(r.iso);
}

TEST(Apps, FiniteTorusCentre) {
  const Tolerance tol;
  for (auto [n, k] : {std::pair{2, 1}, {3, 1}, {4, 2}, {4, 0}, {6, 4}, {6, 3}, {5, 2}}) {
    const TorusResult r = finite_torus(n, k, tol);
    SCOPED_TRACE("N=" + std::to_string(n) + " k=" + std::to_string(k));
    EXPECT_EQ(r.dim, n * n);
    EXPECT_EQ(r.center_dim, brute_force_torus_center(n, k));
    EXPECT_EQ(r.expected_center_dim, r.center_dim);
    EXPECT_LT(r.relation, 1e-12);
    if (std::gcd(n, k) == 1) {
      ASSERT_TRUE(r.matrix_iso.has_value());
      EXPECT_TRUE(*r.matrix_iso);
    }
  }
  EXPECT_THROW(finite_torus(1, 0, tol), std::invalid_argument);
  EXPECT_THROW(finite_torus(3, 3, tol), std::invalid_argument);
}

TEST(Apps, ReducedCrossedProductOfGroupAlgebraIsFullMatrices) {
  const Tolerance tol;
  for (const auto& g : {z2, z3, FinAbGroup({2, 2})}) {
    const ReducedCrossedProduct r = reduced_crossed_product(group_algebra(g, tol), tol);
    EXPECT_TRUE(r.dimension_law);
    EXPECT_TRUE(r.iso.has_value());
    EXPECT_EQ(center(r.boxtimes.algebra, tol).dimension(), 1);
    EXPECT_TRUE(regular_crossed_product_iso(r, tol).has_value());
  }
}

TEST(Apps, ReducedCrossedProductDimensions) {
  const Tolerance tol;
  const GradedAlgebra m2 = matrix_labels(z3, {0, 1}, {}, tol);
  const ReducedCrossedProduct r = reduced_crossed_product(m2, tol);
  EXPECT_EQ(r.boxtimes.dimension(), 12);
  EXPECT_TRUE(r.iso.has_value());
  // trivial grading: C ⋊ Ĝ = C ⊗ C(G) is commutative for commutative C
  const GradedAlgebra triv = trivially_graded(z3, {matrix_unit(2, 2, 0, 0), matrix_unit(2, 2, 1, 1)}, tol, "C2");
  const ReducedCrossedProduct t = reduced_crossed_product(triv, tol);
  EXPECT_EQ(t.boxtimes.dimension(), 6);
  EXPECT_EQ(center(t.boxtimes.algebra, tol).dimension(), 6);
}

TEST(Apps, DualCoactionIsAGrading) {
  const Tolerance tol;
  const DualCoactionResult d = dual_coaction(reduced_crossed_product(matrix_labels(z2, {0, 1}, {}, tol), tol), tol);
  EXPECT_TRUE(d.grading.passed(tol));
  EXPECT_TRUE(d.coaction.passed(tol));
  EXPECT_EQ(d.graded.dimension(), 8);
}

TEST(Apps, EmbeddingIntoReducedProducts) {
  const Tolerance tol;
  const EmbedInReducedResult r = embed_in_reduced(group_algebra(z2, tol), group_algebra(z2, tol), Bicharacter(z2, z2, {{1}}), tol);
  EXPECT_LT(r.containment, 1e-10);
  EXPECT_TRUE(r.iso.has_value());
  EXPECT_EQ(r.image.dimension(), 4);
  const EmbedInReducedResult s =
      embed_in_reduced(matrix_labels(z3, {0, 1}, {}, tol), function_algebra(z3, tol), Bicharacter(z3, z3, {{2}}), tol);
  EXPECT_LT(s.containment, 1e-10);
  EXPECT_TRUE(s.iso.has_value());
}

TEST(Apps, TensorMembership) {
  const Tolerance tol;
  const Subspace a = span_basis(std::vector<COperator>{identity(2), sx()}, tol);
  const Subspace b = span_basis(std::vector<COperator>{matrix_unit(3, 3, 0, 0), matrix_unit(3, 3, 1, 1), matrix_unit(3, 3, 2, 2)}, tol);
  EXPECT_LT(tensor_membership_residual(kron(sx(), matrix_unit(3, 3, 1, 1)), a, b), 1e-14);
  EXPECT_GT(tensor_membership_residual(kron(sx(), matrix_unit(3, 3, 0, 1)), a, b), 0.5);
  EXPECT_GT(tensor_membership_residual(kron(matrix_unit(2, 2, 0, 0), identity(3)), a, b), 0.1);
}

TEST(Apps, CocycleConjugacyWithLabelCocycle) {
  const Tolerance tol;
  const GradedAlgebra c = matrix_labels(z4, {0, 1}, {}, tol);
  const COperator u = corepresentation_cocycle(GradedHilbertSpace{z4, {0, 1}});
  const ConjugacyResult r = cocycle_conjugacy(c, u, group_algebra(z4, tol), std::nullopt, Bicharacter(z4, z4, {{1}}), tol);
  EXPECT_TRUE(r.u_report.passed(tol));
  EXPECT_TRUE(r.found(tol));
  EXPECT_EQ(r.original.dimension(), r.twisted.dimension());
}

TEST(Apps, CocycleConjugacyRejectsNonCocycle) {
  const Tolerance tol;
  const GradedAlgebra m2 = trivially_graded(z2, {sx(), matrix_unit(2, 2, 0, 0)}, tol, "M2");
  const COperator bad = kron(COperator(matrix_unit(2, 2, 0, 0) - matrix_unit(2, 2, 1, 1)), identity(2));
  EXPECT_THROW(cocycle_conjugacy(m2, bad, group_algebra(z2, tol), std::nullopt, Bicharacter(z2, z2, {{1}}), tol),
               std::invalid_argument);
}

TEST(Apps, InnerCoactionsUntwist) {
  const Tolerance tol;
  const GradedAlgebra m2 = trivially_graded(z2, {sx(), matrix_unit(2, 2, 0, 0)}, tol, "M2");
  const COperator u = corepresentation_cocycle(GradedHilbertSpace{z2, {0, 1}});
  const Bicharacter chi(z2, z2, {{1}});
  EXPECT_TRUE(inner_coaction_iso(m2, u, group_algebra(z2, tol), std::nullopt, chi, tol).found(tol));
  // both sides inner: K(C²) ⊠ K(C²) ≅ M2 ⊗ M2
  const InnerResult kk = inner_coaction_iso(m2, u, m2, u, chi, tol);
  EXPECT_TRUE(kk.found(tol));
  EXPECT_EQ(kk.conjugacy.twisted.dimension(), 16);
}

TEST(Apps, ModulesFromLabels) {
  const Tolerance tol;
  const GradedHilbertModule e = module_from_labels(z2, {0}, {0, 1}, tol);
  EXPECT_EQ(e.module.size(), 2u);
  EXPECT_EQ(e.coefficients.size(), 4u);
  EXPECT_EQ(e.compacts.size(), 1u);
  EXPECT_TRUE(check_module(e, tol).passed(tol));
  const GradedHilbertModule f = module_from_labels(z4, {1, 0}, {3}, tol);
  const ModuleBoxtimesResult r = module_boxtimes(f, module_from_labels(z2, {0, 1}, {1}, tol), Bicharacter(z4, z2, {{1}}), tol);
  EXPECT_TRUE(r.passed(tol));
  EXPECT_TRUE(r.inner_span);
  EXPECT_EQ(r.module_dim, 4);
  EXPECT_EQ(r.compacts.dimension(), 16);
}

TEST(Apps, CompositionOfModules) {
  const Tolerance tol;
  const CompositionResult r = composition_check(z3, {{0}, {1, 2}, {2}}, z2, {{1}, {0}, {0, 1}}, Bicharacter(z3, z2, {{0}}), tol);
  EXPECT_TRUE(r.equal);
  // E1E2 = 1×1 block (1,3) and F1F2 = 1×2 block (1,3)
  EXPECT_EQ(r.dim, 2);
  EXPECT_EQ(r.expected_dim, 2);
  const Bicharacter chi2(z2, z2, {{1}});
  const CompositionResult s = composition_check(z2, {{0}, {1, 0}, {1}}, z2, {{1}, {0, 1}, {0}}, chi2, tol);
  EXPECT_TRUE(s.equal);
  EXPECT_EQ(s.dim, 1);
}
