#pragma once

// Named scenarios built on ⊠: skew tensor products, finite noncommutative
// tori, reduced crossed products and their dual coactions, cocycle twists of
// C ⊗ D, cocycle conjugacy, and graded Hilbert modules.

#include "qtwist/boxtimes.hpp"

#include <optional>
#include <string>
#include <tuple>
#include <vector>

namespace qtwist {

/// Structure constants on a basis e_0..e_{dim-1}: e_a e_b = Σ_q left[a](q,b) e_q
/// and e_a* = Σ_q star(q,a) e_q.
struct StructureTable {
  Index dim = 0;
  std::vector<COperator> left;
  CMatrix star;

  cd at(Index a, Index b, Index q) const { return left[std::size_t(a)].coeff(q, b); }
  /// Non-zero constants as (a, b, q, value).
  std::vector<std::tuple<Index, Index, Index, cd>> triplets() const;
};

using TwistedProductTable = StructureTable;

/// max_{a,b} ‖f_a f_b − Σ_q T_ab^q f_q‖ and the same for adjoints.
struct TableComparison {
  double product = 0;
  double star = 0;
  bool matches(double tol) const { return product < tol && star < tol; }
};

TableComparison compare_table(const StructureTable& t, const std::vector<COperator>& family);
/// max_{a,b} ‖L(e_a e_b) − L(e_a) L(e_b)‖ over left-regular matrices.
double associativity_residual(const StructureTable& t);
/// Involution axioms: (xy)* = y*x* and x** = x on basis elements.
double star_residual(const StructureTable& t);

/// Koszul product on C ⊗ D for Z/2-gradings:
/// (c₁⊗d₁)(c₂⊗d₂) = (−1)^{deg c₂ · deg d₁} c₁c₂ ⊗ d₁d₂, (c⊗d)* = (−1)^{deg c · deg d} c*⊗d*.
StructureTable koszul_table(const GradedAlgebra& c, const GradedAlgebra& d);

/// Cocycle twist of C ⊗ D by Ψ((g₁,h₁),(g₂,h₂)) = χ(g₂,h₁)⁻¹; the adjoint is
/// (c⊗d)* = conj χ(g,h) c*⊗d*.
StructureTable twisted_table(const GradedAlgebra& c, const GradedAlgebra& d, const Bicharacter& chi);

/// max |Ψ(x,y)Ψ(x+y,z) − Ψ(y,z)Ψ(x,y+z)| over G × H.
double psi_cocycle_residual(const Bicharacter& chi);

struct SkewTensorResult {
  StructureTable table;
  CrossedProduct product;  // Heisenberg route with χ(a,b) = (−1)^{ab}
  TableComparison comparison;
  std::vector<COperator> representation;  // faithful Koszul representation of the basis
  TableComparison representation_check;
  bool representation_faithful = false;
  Index center_dim = 0;
};

SkewTensorResult skew_tensor(const GradedAlgebra& c, const GradedAlgebra& d, const Tolerance& tol = {});

struct TorusResult {
  int n = 0;
  int k = 0;
  CrossedProduct product;
  Index dim = 0;
  Index center_dim = 0;
  Index expected_center_dim = 0;  // gcd(k, N)²
  double relation = 0;  // ‖vu − exp(−2πik/N) uv‖ plus u^N = v^N = 1
  std::optional<bool> matrix_iso;  // certified ≅ M_N, set when gcd(k, N) = 1
};

TorusResult finite_torus(int n, int k, const Tolerance& tol = {});

struct ReducedCrossedProduct {
  CrossedProduct boxtimes;  // (C, γ) ⊠ (C(G), Δ̂) through the canonical Heisenberg pair
  CrossedProduct direct;    // span (c ⊗ λ_g)(1 ⊗ M_f) on C^n ⊗ ℓ²(G)
  std::optional<InducedMap> iso;
  bool dimension_law = false;  // dim = dim C · |G|
};

ReducedCrossedProduct reduced_crossed_product(const GradedAlgebra& c, const Tolerance& tol = {});

/// For C = C*(G) with its regular grading: (λ_g⊗λ_g)(1⊗M_ξ) ↦ λ_g M_ξ into M_|G|.
std::optional<InducedMap> regular_crossed_product_iso(const ReducedCrossedProduct& r, const Tolerance& tol = {});

struct DualCoactionResult {
  GradedAlgebra graded;  // C ⋊ Ĝ graded by Ĝ: ι_C(C) in degree 0, ι(e_ξ) in degree ξ
  GradingReport grading;
  CoactionReport coaction;  // left coaction checked by mirroring
};

DualCoactionResult dual_coaction(const ReducedCrossedProduct& r, const Tolerance& tol = {});

struct RieffelResult {
  TwistedProductTable table;
  CrossedProduct product;
  TableComparison comparison;
  double associativity = 0;
  double cocycle = 0;
  double star = 0;
  bool iso = false;
};

RieffelResult rieffel_twist_compare(const GradedAlgebra& c, const GradedAlgebra& d, const Bicharacter& chi,
                                    const Tolerance& tol = {});

struct EmbedInReducedResult {
  ReducedCrossedProduct c_side;
  ReducedCrossedProduct d_side;
  CrossedProduct image;  // (ι_C)₁ and Ad_{χ*}∘(ι_D)₂ inside (C⋊Ĝ) ⊗ (D⋊Ĥ)
  double containment = 0;  // generators lie in (C⋊Ĝ) ⊗ (D⋊Ĥ)
  std::optional<InducedMap> iso;  // C ⊠_χ D → image
};

EmbedInReducedResult embed_in_reduced(const GradedAlgebra& c, const GradedAlgebra& d, const Bicharacter& chi,
                                      const Tolerance& tol = {});

/// max residual of y against A ⊗ B, computed as membership of all first-leg
/// slices in B and all second-leg slices in A.
double tensor_membership_residual(const COperator& y, const Subspace& a, const Subspace& b);

struct ConjugacyResult {
  CocycleReport u_report;
  CocycleReport v_report;
  CrossedProduct original;  // (C,γ) ⊠ (D,δ)
  CrossedProduct twisted;   // (C,γ_u) ⊠ (D,δ_v)
  std::optional<LinearMap> iso;
  HomCertificate certificate;
  bool bijective = false;
  bool found(const Tolerance& tol) const { return iso.has_value() && bijective && certificate.passed(tol); }
};

/// Builds both products and an isomorphism through linking algebras
/// M₂(C) (twisted by E₁₁⊗1 + E₂₂⊗u) and M₂(D).  Either cocycle may be empty
/// (meaning 1).  Throws if a cocycle fails its conditions.
ConjugacyResult cocycle_conjugacy(const GradedAlgebra& c, const std::optional<COperator>& u, const GradedAlgebra& d,
                                  const std::optional<COperator>& v, const Bicharacter& chi,
                                  const Tolerance& tol = {});

struct InnerResult {
  ConjugacyResult conjugacy;  // trivial ⊠ D ≅ inner ⊠ D
  std::optional<LinearMap> to_tensor;  // inner ⊠ D → C ⊗ D
  HomCertificate certificate;
  bool found(const Tolerance& tol) const { return conjugacy.found(tol) && to_tensor && certificate.passed(tol); }
};

/// For trivial gradings twisted by corepresentation cocycles u (and v when
/// given): (C, Ad_u∘τ) ⊠_χ (D, Ad_v∘τ) ≅ C ⊗ D.
InnerResult inner_coaction_iso(const GradedAlgebra& c_trivial, const COperator& u, const GradedAlgebra& d,
                               const std::optional<COperator>& v, const Bicharacter& chi, const Tolerance& tol = {});

/// A right Hilbert module E = p L q inside a graded linking algebra L on
/// C^{n+m}; C = qLq, K(E) = span E E*.
struct GradedHilbertModule {
  GradedAlgebra linking;
  Index top = 0;     // n
  Index bottom = 0;  // m
  std::vector<COperator> module;        // homogeneous basis of E
  std::vector<COperator> coefficients;  // homogeneous basis of C
  std::vector<COperator> compacts;      // homogeneous basis of K(E)
  std::vector<int> module_degree;
  std::vector<int> coefficient_degree;
  std::vector<int> compact_degree;
};

/// Full matrix module M_{n×m} over M_m with E_ij in degree l_i − l_j.
GradedHilbertModule module_from_labels(const FinAbGroup& g, const std::vector<int>& top_labels,
                                       const std::vector<int>& bottom_labels, const Tolerance& tol = {});

struct ModuleCheck {
  double right_action = 0;  // E·C ⊆ E
  double inner_product = 0; // E*·E ⊆ C
  double grading = 0;       // degrees add on E·C and E*
  bool passed(const Tolerance& tol) const {
    return right_action < tol.eps_eq && inner_product < tol.eps_eq && grading < tol.eps_eq;
  }
};

ModuleCheck check_module(const GradedHilbertModule& e, const Tolerance& tol = {});

struct ModuleBoxtimesResult {
  CrossedProduct linking;      // L_E ⊠_χ L_F
  Subspace module;             // E ⊠ F
  Subspace coefficients;       // C ⊠ D inside the linking product
  Subspace compacts;           // span ι(K(E)) ι(K(F))
  double right_action = 0;     // (E⊠F)(C⊠D) ⊆ E⊠F
  double inner_product = 0;    // (E⊠F)*(E⊠F) ⊆ C⊠D
  bool inner_span = false;     // span (E⊠F)*(E⊠F) = C⊠D (full module)
  bool compact_equal = false;  // span (E⊠F)(E⊠F)* = span ι(K(E))ι(K(F))
  bool exchange = false;       // span ι(E)ι(F) = span ι(F)ι(E)
  std::optional<InducedMap> compact_iso;  // K(E) ⊠ K(F) built on its own ≅ span ι(K(E))ι(K(F))
  Index module_dim = 0;
  bool passed(const Tolerance& tol) const {
    return right_action < tol.eps_eq && inner_product < tol.eps_eq && compact_equal && exchange &&
           compact_iso.has_value();
  }
};

ModuleBoxtimesResult module_boxtimes(const GradedHilbertModule& e, const GradedHilbertModule& f, const Bicharacter& chi,
                                     const Tolerance& tol = {});

struct CompositionResult {
  CrossedProduct linking;  // C' ⊠ D' with C' ⊇ E₁, E₂ and D' ⊇ F₁, F₂ as blocks
  bool equal = false;      // span (E₁⊠F₁)(E₂⊠F₂) = (E₁E₂) ⊠ (F₁F₂)
  Index dim = 0;
  Index expected_dim = 0;
};

/// Three-block instance: C' = M_{n₁+n₂+n₃} with labels, E₁ = block(1,2),
/// E₂ = block(2,3); the same for D'.
CompositionResult composition_check(const FinAbGroup& g, const std::vector<std::vector<int>>& c_labels,
                                    const FinAbGroup& h, const std::vector<std::vector<int>>& d_labels,
                                    const Bicharacter& chi, const Tolerance& tol = {});

}  // namespace qtwist
