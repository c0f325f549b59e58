#pragma once

// χ-Heisenberg pairs in Weyl form: unitary representations U of G and V of H
// on one space with U_g V_h = χ(g,h) V_h U_g.  Anti-Heisenberg pairs satisfy
// V_h U_g = χ(g,h) U_g V_h.

#include "qtwist/abgroup.hpp"
#include "qtwist/matspan.hpp"
#include "qtwist/qgroup.hpp"

#include <string>
#include <vector>

namespace qtwist {

struct RepPair {
  FinAbGroup G;
  FinAbGroup H;
  Index dim = 0;
  std::vector<COperator> U;  // indexed by element index of G
  std::vector<COperator> V;  // indexed by element index of H
  std::string provenance;
};

struct RelationCheck {
  bool holds = false;
  double residual = 0;
};

/// Unitarity and the homomorphism property of U and V, checked on all
/// elements against products of generator images.
double representation_defect(const RepPair& p);

RelationCheck is_heisenberg(const RepPair& p, const Bicharacter& chi, const Tolerance& tol = {});
RelationCheck is_anti_heisenberg(const RepPair& p, const Bicharacter& chi, const Tolerance& tol = {});

/// On ℓ²(H): U_g = multiplication by k ↦ χ(g,k), V_h = translation by h.
RepPair canonical_heisenberg(const Bicharacter& chi);
/// On ℓ²(G) ⊗ ℓ²(H): U_g = λ_g ⊗ diag χ(g,·), V_h = 1 ⊗ translation by h.
RepPair composite_heisenberg(const Bicharacter& chi);
/// (U ⊗ 1_m, V ⊗ 1_m).
RepPair amplified(const RepPair& p, Index m = 2);
/// Entrywise complex conjugate, i.e. Ũ_g = (U_{-g})ᵀ for unitary representations.
RepPair conjugate_pair(const RepPair& p);
/// (V, U) as a pair for H × G.
RepPair swapped(const RepPair& p);
/// (Ad_w ∘ U, Ad_w ∘ V).
RepPair conjugated(const RepPair& p, const COperator& w);

/// max over generator pairs of ‖[U_g ⊗ Ũ_g, V_h ⊗ Ṽ_h]‖ in operator norm.
double commutation_check(const RepPair& h, const RepPair& a);

/// ‖W^A_{1α} W^B_{2β} − W^B_{2β} W^A_{1α} χ₁₂‖ on ℓ²(G) ⊗ ℓ²(H) ⊗ C^dim.
double heisenberg_operator_residual(const RepPair& p, const Bicharacter& chi);

/// The pair (λ, multiplication) on ℓ²(G) read through the Kac-Takesaki
/// unitary: W₂₃W₁₂ = W₁₂W₁₃W₂₃.
double heisenberg_pentagon_residual(const QuantumGroupModel& m);

}  // namespace qtwist
