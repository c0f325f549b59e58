#include "qtwist/matspan.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace qtwist;

namespace {

COperator dense(std::initializer_list<std::initializer_list<cd>> rows) {
  const Index n = Index(rows.size());
  CMatrix m(n, n);
  Index i = 0;
  for (const auto& r : rows) {
    Index j = 0;
    for (cd v : r) m(i, j++) = v;
    ++i;
  }
  return to_operator(m);
}

const cd I(0, 1);

COperator sx() { return dense({{0, 1}, {1, 0}}); }
COperator sz() { return dense({{1, 0}, {0, -1}}); }

COperator random_unitary(Index n, unsigned seed) {
  std::mt19937 rng(seed);
  std::normal_distribution<double> nd;
  CMatrix a(n, n);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) a(i, j) = cd(nd(rng), nd(rng));
  Eigen::HouseholderQR<CMatrix> qr(a);
  return to_operator(CMatrix(qr.householderQ()));
}

}  // namespace

TEST(Matspan, RankCountsIndependentDirections) {
  const Tolerance tol;
  const std::vector<COperator> v{identity(2), 2.0 * identity(2), matrix_unit(2, 2, 0, 0)};
  EXPECT_EQ(span_rank<cd>(2, v, tol), 2);
  const std::vector<COperator> paulis{identity(2), sx(), sz(), product(sx(), sz())};
  EXPECT_EQ(span_rank<cd>(2, paulis, tol), 4);
}

TEST(Matspan, SpanBasisIsOrthonormal) {
  const Tolerance tol;
  const std::vector<COperator> v{identity(3), matrix_unit(3, 3, 0, 2) + matrix_unit(3, 3, 1, 1), matrix_unit(3, 3, 1, 1)};
  const Subspace s = span_basis(v, tol);
  ASSERT_EQ(s.dimension(), 3);
  const CMatrix gram = s.frame().adjoint() * s.frame();
  EXPECT_LT((gram - CMatrix::Identity(3, 3)).norm(), 1e-12);
  for (const auto& x : v) EXPECT_LT(s.residual(x), 1e-12);
  EXPECT_NEAR(double(s.residual(matrix_unit(3, 3, 2, 0))), 1.0, 1e-12);
}

TEST(Matspan, SubspaceEqualityIgnoresGenerators) {
  const Tolerance tol;
  const std::vector<COperator> a{matrix_unit(2, 2, 0, 0), matrix_unit(2, 2, 1, 1)};
  const std::vector<COperator> b{identity(2), sz()};
  const std::vector<COperator> c{identity(2), sx()};
  EXPECT_TRUE(subspace_equal(span_basis(a, tol), span_basis(b, tol), tol));
  EXPECT_FALSE(subspace_equal(span_basis(a, tol), span_basis(c, tol), tol));
  EXPECT_TRUE(subspace_contained(span_basis(std::vector<COperator>{sz()}, tol), span_basis(a, tol), tol));
}

TEST(Matspan, ClosureOfPaulis) {
  const Tolerance tol;
  // σx alone generates the commutative algebra {1, σx}; with σz it is all of M2
  EXPECT_EQ(multiplicative_closure(std::vector<COperator>{sx()}, tol).dimension(), 2);
  const AlgebraBasis m2 = multiplicative_closure(std::vector<COperator>{sx(), sz()}, tol);
  EXPECT_EQ(m2.dimension(), 4);
  EXPECT_TRUE(is_star_subalgebra(m2.subspace, tol));
  // a nilpotent generator: closure of E12 adds E21, E11, E22
  EXPECT_EQ(multiplicative_closure(std::vector<COperator>{matrix_unit(3, 3, 0, 1)}, tol).dimension(), 4);
}

TEST(Matspan, CenterOfBlockAlgebra) {
  const Tolerance tol;
  // M2 ⊕ C on C^3: centre is spanned by the two block units
  std::vector<COperator> gens{matrix_unit(3, 3, 0, 1), matrix_unit(3, 3, 2, 2)};
  const AlgebraBasis a = multiplicative_closure(gens, tol);
  EXPECT_EQ(a.dimension(), 5);
  const Subspace z = center(a, tol);
  EXPECT_EQ(z.dimension(), 2);
  EXPECT_LT(z.residual(matrix_unit(3, 3, 0, 0) + matrix_unit(3, 3, 1, 1)), 1e-10);
  // diagonal algebra is its own centre
  std::vector<COperator> diag{matrix_unit(4, 4, 0, 0), matrix_unit(4, 4, 1, 1), matrix_unit(4, 4, 2, 2)};
  const AlgebraBasis d = multiplicative_closure(diag, tol);
  EXPECT_EQ(center(d, tol).dimension(), d.dimension());
}

TEST(Matspan, KronAndFlip) {
  const COperator a = dense({{1, 2}, {3, 4}});
  const COperator b = dense({{0, I, 0}, {1, 0, 0}, {0, 0, 5}});
  const COperator ab = kron(a, b);
  ASSERT_EQ(ab.rows(), 6);
  // first leg outermost: (i1,i2) ↦ 3 i1 + i2
  EXPECT_EQ(ab.coeff(3 * 1 + 1, 3 * 0 + 0), cd(3) * cd(1));
  EXPECT_EQ(ab.coeff(3 * 0 + 0, 3 * 1 + 1), cd(2) * I);
  const COperator f = flip(2, 3);
  EXPECT_LT(distance(product(product(f, ab), adjoint(f)), kron(b, a)), 1e-14);
}

TEST(Matspan, OperatorNorm) {
  EXPECT_NEAR(double(operator_norm(dense({{3, 0}, {0, -1}}))), 3.0, 1e-12);
  // nilpotent E12 has norm 1; [[1,1],[0,1]] has norm golden ratio
  EXPECT_NEAR(double(operator_norm(matrix_unit(2, 2, 0, 1))), 1.0, 1e-12);
  EXPECT_NEAR(double(operator_norm(dense({{1, 1}, {0, 1}}))), (1 + std::sqrt(5.0)) / 2, 1e-12);
}

TEST(Matspan, FrameSolvesCoefficients) {
  const Tolerance tol;
  const std::vector<COperator> fam{identity(2), sx(), sz(), identity(2) + sx()};
  const Frame fr(2, fam, tol);
  EXPECT_EQ(fr.span().dimension(), 3);
  EXPECT_FALSE(fr.independent());
  const COperator x = 2.0 * sx() - I * sz();
  EXPECT_LT(distance(fr.combine(fr.solve(x)), x), 1e-12);
}

TEST(Matspan, InnerAutomorphismIsFound) {
  const Tolerance tol;
  const COperator w = random_unitary(2, 7);
  const std::vector<COperator> v{sx(), sz()};
  std::vector<COperator> img;
  for (const auto& x : v) img.push_back(product(product(w, x), adjoint(w)));
  const AlgebraBasis m2 = multiplicative_closure(v, tol);
  const AlgebraBasis m2w = multiplicative_closure(img, tol);
  std::vector<COperator> fam{identity(2), sx(), sz(), product(sx(), sz())}, fimg;
  for (const auto& x : fam) fimg.push_back(product(product(w, x), adjoint(w)));
  auto iso = find_generator_isomorphism<cd>(m2, fam, m2w, fimg, tol, v, img);
  ASSERT_TRUE(iso.has_value());
  EXPECT_LT(iso->certificate.multiplicativity, 1e-10);
  // the induced map agrees with Ad_w off the family
  const COperator y = 3.0 * sx() + I * identity(2);
  EXPECT_LT(distance(iso->map(y), product(product(w, y), adjoint(w))), 1e-10);
}

TEST(Matspan, NonMultiplicativeAssignmentIsRejected) {
  const Tolerance tol;
  const AlgebraBasis m2 = multiplicative_closure(std::vector<COperator>{sx(), sz()}, tol);
  // sending σx and σz both to σz is linear on the basis but not multiplicative
  std::vector<COperator> fam{identity(2), sx(), sz(), product(sx(), sz())};
  std::vector<COperator> bad{identity(2), sz(), sz(), identity(2)};
  EXPECT_FALSE(find_generator_isomorphism<cd>(m2, fam, m2, bad, tol).has_value());
  // transpose is linear and *-preserving but anti-multiplicative on M2
  std::vector<COperator> tr;
  for (const auto& x : fam) tr.push_back(COperator(x.transpose()));
  EXPECT_FALSE(find_generator_isomorphism<cd>(m2, fam, m2, tr, tol).has_value());
}

TEST(Matspan, RelationViolationIsRejected) {
  const Tolerance tol;
  // v0 = v1 in the source but images differ
  const std::vector<COperator> v{identity(2), identity(2)};
  const std::vector<COperator> w{identity(2), sz()};
  const Subspace a1 = span_basis(std::vector<COperator>{identity(2)}, tol);
  const Subspace a2 = span_basis(std::vector<COperator>{identity(2), sz()}, tol);
  EXPECT_FALSE(induced_homomorphism<cd>(a1, v, a2, w, tol).has_value());
}

TEST(Matspan, ComposeMatchesSequentialApplication) {
  const Tolerance tol;
  const COperator w1 = random_unitary(2, 1), w2 = random_unitary(2, 2);
  std::vector<COperator> fam{identity(2), sx(), sz(), product(sx(), sz())}, f1, f2;
  for (const auto& x : fam) f1.push_back(product(product(w1, x), adjoint(w1)));
  for (const auto& x : f1) f2.push_back(product(product(w2, x), adjoint(w2)));
  const AlgebraBasis m2 = multiplicative_closure(fam, tol);
  auto a = find_generator_isomorphism<cd>(m2, fam, m2, f1, tol);
  auto b = find_generator_isomorphism<cd>(m2, f1, m2, f2, tol);
  ASSERT_TRUE(a && b);
  const LinearMap ba = compose(b->map, a->map);
  const COperator w = product(w2, w1);
  const COperator y = sx() + 2.0 * I * sz();
  EXPECT_LT(distance(ba(y), product(product(w, y), adjoint(w))), 1e-10);
}

TEST(Matspan, ToleranceValidation) {
  EXPECT_NO_THROW(Tolerance{}.validate());
  EXPECT_THROW((Tolerance{0.5, 1e-8}.validate()), std::invalid_argument);
  EXPECT_THROW((Tolerance{1e-9, 0}.validate()), std::invalid_argument);
}
