#pragma once

// The twisted tensor product C ⊠_χ D: the span ι_C(C)·ι_D(D) built from a
// Heisenberg pair or from covariant representations and the Z unitary.

#include "qtwist/abgroup.hpp"
#include "qtwist/coact.hpp"
#include "qtwist/heis.hpp"
#include "qtwist/matspan.hpp"

#include <optional>
#include <string>
#include <vector>

namespace qtwist {

struct CrossedProductChecks {
  double closure = 0;       // products with generators and adjoints stay in the span
  bool exchange = false;    // span ι_C(C)ι_D(D) = span ι_D(D)ι_C(C)
  bool dimension_law = false;  // dim = dim C · dim D
  double iota_c_hom = 0;
  double iota_d_hom = 0;
  bool iota_c_injective = false;
  bool iota_d_injective = false;
  double commutation = 0;   // ι_D(d)ι_C(c) = χ(g,h)⁻¹ ι_C(c)ι_D(d)
  double equivariant_commute = 0;  // degree-0 elements commute with the other factor
  bool passed(const Tolerance& tol) const;
};

struct CrossedProduct {
  GradedAlgebra c;
  GradedAlgebra d;
  Bicharacter chi;
  Index ambient = 0;
  std::vector<COperator> iota_c;  // images of c.basis
  std::vector<COperator> iota_d;  // images of d.basis
  Frame family;                   // ι_C(c_i) ι_D(d_j) at i * dim D + j
  AlgebraBasis algebra;
  std::string provenance;
  Index witness_dim = 0;          // Hilbert space of the Heisenberg pair; 0 otherwise
  CrossedProductChecks checks;

  Index dimension() const { return algebra.dimension(); }
  COperator embed_c(const COperator& x) const;
  COperator embed_d(const COperator& y) const;
  std::vector<COperator> generators() const;  // ι_C(basis) followed by ι_D(basis)
};

/// Assembles and certifies a crossed product from the two embeddings.
CrossedProduct assemble(GradedAlgebra c, GradedAlgebra d, Bicharacter chi, Index ambient,
                        std::vector<COperator> iota_c, std::vector<COperator> iota_d,
                        std::string provenance, const Tolerance& tol = {});

/// ι_C(c) = c ⊗ 1 ⊗ U_g and ι_D(d) = 1 ⊗ d ⊗ V_h on C^{n_C} ⊗ C^{n_D} ⊗ C^L.
CrossedProduct build_via_heisenberg(const GradedAlgebra& c, const GradedAlgebra& d, const Bicharacter& chi,
                                    const RepPair& pair, const Tolerance& tol = {});
CrossedProduct build_via_heisenberg(const GradedAlgebra& c, const GradedAlgebra& d, const Bicharacter& chi,
                                    const Tolerance& tol = {});

/// Block-scalar Z on K ⊗ L: conj χ(g,h) on K_g ⊗ L_h.
COperator z_unitary(const GradedHilbertSpace& k, const GradedHilbertSpace& l, const Bicharacter& chi);
/// ‖U^K_{1α} U^L_{2β} Z₁₂ − U^L_{2β} U^K_{1α}‖ for a Heisenberg pair (α, β).
double z_identity_residual(const GradedHilbertSpace& k, const GradedHilbertSpace& l, const Bicharacter& chi,
                           const RepPair& pair);

/// φ₁(c) = φ(c) ⊗ 1 and ψ̃₂(d) = Z (1 ⊗ ψ(d)) Z* on K ⊗ L.
CrossedProduct build_via_covariant(const CovariantRep& cov_c, const CovariantRep& cov_d, const Bicharacter& chi,
                                   const Tolerance& tol = {});

/// Equivalence of crossed products over the same (C, D): the isomorphism
/// with ι_C(c_i)ι_D(d_j) ↦ ι'_C(c_i)ι'_D(d_j), if it exists.
std::optional<InducedMap> equivalent(const CrossedProduct& x1, const CrossedProduct& x2, const Tolerance& tol = {});

struct SymmetryResult {
  CrossedProduct flipped;  // D ⊠_χ̂ C
  std::optional<InducedMap> iso;  // ι_C ↦ ι'_C, ι_D ↦ ι'_D
};

SymmetryResult symmetry(const CrossedProduct& x, const Tolerance& tol = {});

struct PodlesSpanReport {
  Index dimension = 0;  // dim span (C⊠D)·(1⊗1⊗M_L)
  Index expected = 0;   // dim C · dim D · L²
  bool equal = false;   // span equals C ⊗ D ⊗ M_L
};

/// Requires a Heisenberg-route product.  Right multiplication by 1⊗1⊗E_ab
/// moves column block a to column block b, so the span splits into L copies
/// of span{x·(1⊗1⊗E_a0)}; that block is compared with C ⊗ D ⊗ (column 0).
PodlesSpanReport podles_span_check(const CrossedProduct& x, const Tolerance& tol = {});

struct FunctorResult {
  std::optional<InducedMap> map;
  MorphismReport f;
  MorphismReport g;
  bool injective = false;
  bool surjective = false;
  /// injective f, g ⇒ injective f⊠g; surjective f, g ⇒ surjective f⊠g
  bool consistent = false;
};

/// f ⊠ g: ι_{C₁}(c)ι_{D₁}(d) ↦ ι_{C₂}(f(c))ι_{D₂}(g(d)); throws when f or g is
/// not an equivariant *-homomorphism.
FunctorResult functor_map(const GradedMorphism& f, const GradedMorphism& g, const CrossedProduct& x1,
                          const CrossedProduct& x2, const Tolerance& tol = {});

struct ReparametrizeResult {
  CrossedProduct transported;  // (C over G₂) ⊠_{χ₂} (D over H₂)
  CrossedProduct pulled;       // C ⊠_χ D with χ = χ₂ ∘ (f × g)
  std::optional<InducedMap> iso;
};

ReparametrizeResult qgr_morphism_reparametrize(const GradedAlgebra& c, const GradedAlgebra& d, const GroupHom& f,
                                               const GroupHom& g, const Bicharacter& chi2, const Tolerance& tol = {});
/// D regraded over Ĝ ≅ G through the homomorphism H → Ĝ induced by χ, paired
/// with the canonical pairing.
ReparametrizeResult reduce_to_a(const GradedAlgebra& c, const GradedAlgebra& d, const Bicharacter& chi,
                                const Tolerance& tol = {});
/// C regraded over Ĥ ≅ H through the homomorphism G → Ĥ induced by χ.
ReparametrizeResult reduce_to_b(const GradedAlgebra& c, const GradedAlgebra& d, const Bicharacter& chi,
                                const Tolerance& tol = {});

/// (C₀⊗C) ⊠_χ (D₀⊗D) ≅ C₀ ⊗ D₀ ⊗ (C ⊠_χ D) for trivially graded C₀, D₀.
std::optional<InducedMap> associativity_check(const GradedAlgebra& c0, const GradedAlgebra& c, const GradedAlgebra& d0,
                                              const GradedAlgebra& d, const Bicharacter& chi,
                                              const Tolerance& tol = {});

}  // namespace qtwist
