#include "qtwist/heis.hpp"

#include <gtest/gtest.h>

using namespace qtwist;

namespace {

std::vector<Bicharacter> samples() {
  const FinAbGroup z2({2}), z3({3}), z4({4}), k4({2, 2});
  return {Bicharacter(z2, z2, {{1}}), Bicharacter(z3, z3, {{1}}), Bicharacter(z4, z2, {{1}}),
          Bicharacter(k4, z4, {{1}, {0}}), Bicharacter(z3, k4, {{0, 0}})};
}

}  // namespace

TEST(Heis, WitnessPairsAreHeisenberg) {
  const Tolerance tol;
  for (const auto& chi : samples()) {
    for (const RepPair& p : {canonical_heisenberg(chi), composite_heisenberg(chi), amplified(canonical_heisenberg(chi))}) {
      SCOPED_TRACE(p.provenance);
      EXPECT_LT(representation_defect(p), 1e-12);
      const RelationCheck r = is_heisenberg(p, chi, tol);
      EXPECT_TRUE(r.holds);
      EXPECT_LT(r.residual, 1e-12);
      EXPECT_LT(heisenberg_operator_residual(p, chi), 1e-12);
    }
  }
}

TEST(Heis, CanonicalPairMatrices) {
  const FinAbGroup z3({3});
  const Bicharacter chi(z3, z3, {{1}});
  const RepPair p = canonical_heisenberg(chi);
  ASSERT_EQ(p.dim, 3);
  // U_1 = diag χ(1,k), V_1 = translation by 1
  for (int k = 0; k < 3; ++k) EXPECT_LT(std::abs(p.U[1].coeff(k, k) - chi.evaluate({1}, {k})), 1e-14);
  EXPECT_LT(distance(p.V[1], translation(z3, 1)), 1e-14);
  // U_g V_h = χ(g,h) V_h U_g checked directly
  for (int g = 0; g < 3; ++g)
    for (int h = 0; h < 3; ++h)
      EXPECT_LT(distance(product(p.U[g], p.V[h]), COperator(chi.evaluate({g}, {h}) * product(p.V[h], p.U[g]))), 1e-13);
}

TEST(Heis, ConjugateIsAntiHeisenberg) {
  const Tolerance tol;
  for (const auto& chi : samples()) {
    const RepPair a = conjugate_pair(canonical_heisenberg(chi));
    EXPECT_TRUE(is_anti_heisenberg(a, chi, tol).holds);
    // the two relations coincide exactly when χ is real-valued
    bool real = true;
    for (const auto& row : chi.value_table())
      for (cd v : row) real = real && std::abs(v.imag()) < 1e-12;
    EXPECT_EQ(is_heisenberg(a, chi, tol).holds, real);
  }
}

TEST(Heis, SwappedPairUsesDualBicharacter) {
  const Tolerance tol;
  for (const auto& chi : samples()) {
    const RepPair s = swapped(canonical_heisenberg(chi));
    EXPECT_TRUE(is_heisenberg(s, dual_bicharacter(chi), tol).holds);
  }
}

TEST(Heis, ConjugationByUnitaryPreservesRelation) {
  const Tolerance tol;
  const Bicharacter chi(FinAbGroup({4}), FinAbGroup({4}), {{1}});
  const RepPair p = canonical_heisenberg(chi);
  // a real rotation mixing the first two basis vectors
  CMatrix w = CMatrix::Identity(4, 4);
  const double c = std::cos(0.3), s = std::sin(0.3);
  w(0, 0) = c, w(0, 1) = -s, w(1, 0) = s, w(1, 1) = c;
  EXPECT_TRUE(is_heisenberg(conjugated(p, to_operator(w)), chi, tol).holds);
}

TEST(Heis, CommutationOfHeisenbergAndAntiHeisenberg) {
  for (const auto& chi : samples()) {
    const RepPair h = canonical_heisenberg(chi);
    EXPECT_LT(commutation_check(h, conjugate_pair(h)), 1e-12);
  }
}

TEST(Heis, CommutationNegativeControl) {
  // two Heisenberg pairs: the phases multiply to χ², which is non-trivial for Z/3
  const Bicharacter chi(FinAbGroup({3}), FinAbGroup({3}), {{1}});
  const RepPair h = canonical_heisenberg(chi);
  const double r = commutation_check(h, h);
  // ‖[X, Y]‖ = |1 − ω²| · ‖XY‖ with ω = exp(2πi/3): |1 − ω²| = √3
  EXPECT_NEAR(r, std::sqrt(3.0), 1e-10);
}

TEST(Heis, NonHeisenbergPairIsDetected) {
  const Tolerance tol;
  const Bicharacter chi(FinAbGroup({2}), FinAbGroup({2}), {{1}});
  const Bicharacter trivial = Bicharacter::trivial(chi.left(), chi.right());
  EXPECT_FALSE(is_heisenberg(canonical_heisenberg(trivial), chi, tol).holds);
  EXPECT_GT(is_heisenberg(canonical_heisenberg(trivial), chi, tol).residual, 1.0);
}

TEST(Heis, PentagonOfKacTakesakiUnitary) {
  for (const std::vector<int>& cyc : {std::vector<int>{2}, {3}, {4}, {2, 2}})
    EXPECT_LT(heisenberg_pentagon_residual(build(FinAbGroup(cyc))), 1e-12);
}
