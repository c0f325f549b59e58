#include "qtwist/coact.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace qtwist;

namespace {

COperator sx() { return matrix_unit(2, 2, 0, 1) + matrix_unit(2, 2, 1, 0); }
COperator sz() { return matrix_unit(2, 2, 0, 0) - matrix_unit(2, 2, 1, 1); }

// degree of the one homogeneous component containing x, or −1
int degree_of(const GradedAlgebra& a, const COperator& x, const Tolerance& tol) {
  for (int g = 0; g < a.group.order(); ++g)
    if (a.components[std::size_t(g)].dimension() > 0 && a.components[std::size_t(g)].residual(x) < tol.eps_eq)
      return g;
  return -1;
}

}  // namespace

TEST(Coact, GroupAlgebraGrading) {
  const Tolerance tol;
  const FinAbGroup g({2, 2});
  const GradedAlgebra a = group_algebra(g, tol);
  EXPECT_EQ(a.dimension(), 4);
  EXPECT_TRUE(check_grading(a, tol).passed(tol));
  for (int k = 0; k < g.order(); ++k) EXPECT_EQ(degree_of(a, translation(g, k), tol), k);
}

TEST(Coact, FunctionAlgebraCharacters) {
  const Tolerance tol;
  const FinAbGroup g({3});
  const GradedAlgebra a = function_algebra(g, tol);
  EXPECT_EQ(a.dimension(), 3);
  // e_1(k) = exp(2πik/3) sits in degree 1
  std::vector<cd> e1;
  for (int k = 0; k < 3; ++k) e1.push_back(std::polar(1.0, 2 * std::acos(-1.0) * k / 3));
  EXPECT_EQ(degree_of(a, multiplication(e1), tol), 1);
  EXPECT_EQ(degree_of(a, indicator(g, 0), tol), -1);  // not homogeneous
}

TEST(Coact, MatrixLabelDegrees) {
  const Tolerance tol;
  const FinAbGroup z4({4});
  const GradedAlgebra a = matrix_labels(z4, {0, 1, 3}, {}, tol);
  EXPECT_EQ(a.dimension(), 9);
  // E_ij has degree l_i − l_j
  EXPECT_EQ(degree_of(a, matrix_unit(3, 3, 0, 1), tol), 3);
  EXPECT_EQ(degree_of(a, matrix_unit(3, 3, 2, 0), tol), 3);
  EXPECT_EQ(degree_of(a, matrix_unit(3, 3, 1, 2), tol), 2);
  EXPECT_EQ(degree_of(a, identity(3), tol), 0);
  // blocks {2,1}: M2 ⊕ C
  const GradedAlgebra b = matrix_labels(z4, {0, 1, 3}, {2, 1}, tol);
  EXPECT_EQ(b.dimension(), 5);
  EXPECT_THROW(matrix_labels(z4, {0, 1, 3}, {2, 2}, tol), std::invalid_argument);
}

TEST(Coact, InvalidGradingThrows) {
  const Tolerance tol;
  const FinAbGroup z2({2});
  // E22 in degree 1 forces E22² = E22 into degree 0
  const DegreePieces bad{{0, {matrix_unit(2, 2, 0, 0)}}, {1, {matrix_unit(2, 2, 1, 1)}}};
  EXPECT_THROW(make_graded(z2, 2, bad, tol, "bad"), std::invalid_argument);
  // E12 without its adjoint's degree
  const DegreePieces missing{{0, {identity(2)}}, {1, {matrix_unit(2, 2, 0, 1)}}};
  EXPECT_THROW(make_graded(z2, 2, missing, tol, "missing"), std::invalid_argument);
}

TEST(Coact, DirectSumAndTensorDimensions) {
  const Tolerance tol;
  const FinAbGroup z3({3});
  const GradedAlgebra a = matrix_labels(z3, {0, 1}, {}, tol), b = group_algebra(z3, tol);
  const GradedAlgebra s = direct_sum(a, b, tol), t = tensor(a, b, tol);
  EXPECT_EQ(s.dimension(), 7);
  EXPECT_EQ(s.carrier, 5);
  EXPECT_EQ(t.dimension(), 12);
  EXPECT_TRUE(check_grading(t, tol).passed(tol));
  // degrees add: E12 ⊗ λ_1 has degree (0 − 1) + 1 = 0
  EXPECT_EQ(degree_of(t, kron(matrix_unit(2, 2, 0, 1), translation(z3, 1)), tol), 0);
}

TEST(Coact, CoactionRoundTrip) {
  const Tolerance tol;
  const FinAbGroup z4({4});
  for (const GradedAlgebra& a : {group_algebra(z4, tol), function_algebra(z4, tol), matrix_labels(z4, {0, 1, 1}, {2, 1}, tol)}) {
    const CoactionMap gamma = grading_to_coaction(a);
    const CoactionReport r = verify_coaction(gamma, tol);
    EXPECT_TRUE(r.passed(tol)) << a.name;
    EXPECT_EQ(r.podles_dim, a.dimension() * z4.order());
    // γ(c) = c ⊗ λ_g on homogeneous c
    for (std::size_t i = 0; i < a.basis.size(); ++i)
      EXPECT_LT(distance(gamma.apply(a.basis[i]), kron(a.basis[i], translation(z4, a.degree[i]))), 1e-12);
    const GradedAlgebra back = coaction_to_grading(gamma, tol);
    for (int g = 0; g < z4.order(); ++g)
      EXPECT_TRUE(subspace_equal(back.components[std::size_t(g)], a.components[std::size_t(g)], tol));
  }
}

TEST(Coact, NonCoactionIsRejected) {
  const Tolerance tol;
  const FinAbGroup z2({2});
  const GradedAlgebra m2 = trivially_graded(z2, {sx(), sz()}, tol, "M2");
  // x ↦ x ⊗ λ_1 is not multiplicative
  CoactionMap bad{z2, 2, m2.algebra.subspace, {}};
  for (const auto& x : m2.algebra.subspace.basis()) bad.images.push_back(kron(x, translation(z2, 1)));
  EXPECT_FALSE(verify_coaction(bad, tol).passed(tol));
  EXPECT_THROW(coaction_to_grading(bad, tol), std::invalid_argument);
}

TEST(Coact, CanonicalCovariantRepresentation) {
  const Tolerance tol;
  const FinAbGroup z3({3});
  for (const GradedAlgebra& a : {group_algebra(z3, tol), function_algebra(z3, tol), matrix_labels(z3, {0, 2}, {}, tol)}) {
    const CovariantReport r = check_covariant(canonical_covariant_rep(a), tol);
    EXPECT_TRUE(r.passed(tol)) << a.name;
    EXPECT_EQ(r.rank, a.dimension());
  }
}

TEST(Coact, CorepresentationCocycleGivesLabelGrading) {
  const Tolerance tol;
  const FinAbGroup z3({3});
  const GradedHilbertSpace k{z3, {0, 1, 1}};
  const GradedAlgebra m3 =
      trivially_graded(z3, {matrix_unit(3, 3, 0, 1), matrix_unit(3, 3, 1, 2)}, tol, "M3");
  ASSERT_EQ(m3.dimension(), 9);
  const COperator u = corepresentation_cocycle(k);
  const CocycleReport r = check_cocycle(m3, u, tol);
  EXPECT_TRUE(r.passed(tol));
  // Ad_u ∘ trivial puts E_ij in degree l_i − l_j
  const GradedAlgebra twisted = twist_by_cocycle(m3, u, tol);
  const GradedAlgebra labels = matrix_labels(z3, {0, 1, 1}, {}, tol);
  for (int g = 0; g < 3; ++g)
    EXPECT_TRUE(subspace_equal(twisted.components[std::size_t(g)], labels.components[std::size_t(g)], tol));
}

TEST(Coact, ConstantCorepresentationIsACocycle) {
  const Tolerance tol;
  const FinAbGroup z2({2});
  const GradedAlgebra m2 = trivially_graded(z2, {sx(), sz()}, tol, "M2");
  // 1 ⊗ λ_1 is Σ E_g ⊗ λ_g with every label equal to 1
  EXPECT_TRUE(check_cocycle(m2, kron(identity(2), translation(z2, 1)), tol).passed(tol));
}

TEST(Coact, NonCocycleIsRejected) {
  const Tolerance tol;
  const FinAbGroup z2({2});
  const GradedAlgebra m2 = trivially_graded(z2, {sx(), sz()}, tol, "M2");
  // z ⊗ 1 with z = diag(1, −1): u₁₂(γ⊗id)u = 1 but (id⊗Δ)u = z ⊗ 1 ⊗ 1
  const COperator u = kron(sz(), identity(2));
  const CocycleReport r = check_cocycle(m2, u, tol);
  EXPECT_GT(r.cocycle, 0.1);
  EXPECT_FALSE(r.passed(tol));
  EXPECT_THROW(twist_by_cocycle(m2, u, tol), std::invalid_argument);
}

TEST(Coact, TransportAlongZeroHomIsTrivial) {
  const Tolerance tol;
  const FinAbGroup z4({4}), z2({2});
  const GradedAlgebra a = group_algebra(z4, tol);
  const GradedAlgebra t = transport_grading(a, GroupHom::zero(z4, z2), tol);
  EXPECT_EQ(t.components[0].dimension(), 4);
  EXPECT_EQ(t.components[1].dimension(), 0);
  // reduction mod 2: λ_1 and λ_3 land in degree 1
  const GradedAlgebra m = transport_grading(a, GroupHom::make(z4, z2, {{1}}), tol);
  EXPECT_EQ(m.components[1].dimension(), 2);
  EXPECT_LT(m.components[1].residual(translation(z4, 3)), 1e-12);
}

TEST(Coact, BicharacterActionScalesHomogeneousParts) {
  const Tolerance tol;
  const FinAbGroup z4({4});
  const GradedAlgebra a = matrix_labels(z4, {0, 1}, {}, tol);
  const Bicharacter chi(z4, z4, {{1}});
  const BicharacterAction act = action_from_bicharacter(a, chi, tol);
  EXPECT_LT(act.automorphism, 1e-12);
  EXPECT_LT(act.homomorphism, 1e-12);
  // E12 has degree 3, θ_1 multiplies it by i³ = −i
  const COperator e12 = matrix_unit(2, 2, 0, 1);
  EXPECT_LT(distance(act.theta[1](e12), COperator(cd(0, -1) * e12)), 1e-12);
  EXPECT_LT(distance(act.theta[2](identity(2)), identity(2)), 1e-12);
}

TEST(Coact, MorphismEquivariance) {
  const Tolerance tol;
  const FinAbGroup z3({3});
  const GradedAlgebra a = matrix_labels(z3, {0, 1}, {}, tol);
  GradedMorphism id{a, a, a.basis};
  const MorphismReport ok = check_morphism(id, tol);
  EXPECT_TRUE(ok.passed(tol));
  EXPECT_TRUE(ok.injective && ok.surjective);
  // Ad_σx swaps E12 (degree 2) with E21 (degree 1)
  GradedMorphism flip_{a, a, {}};
  for (const auto& x : a.basis) flip_.images.push_back(product(product(sx(), x), sx()));
  const MorphismReport bad = check_morphism(flip_, tol);
  EXPECT_GT(bad.equivariance, 0.1);
  EXPECT_LT(bad.homomorphism, 1e-12);
}
