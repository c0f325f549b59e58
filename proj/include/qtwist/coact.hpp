#pragma once

// Coactions of C*(G) on matrix algebras in their finite normal form: a
// G-grading C = ⊕ C_g.  The coaction itself is γ(c) = c ⊗ λ_g on C_g.

#include "qtwist/abgroup.hpp"
#include "qtwist/matspan.hpp"
#include "qtwist/qgroup.hpp"

#include <string>
#include <utility>
#include <vector>

namespace qtwist {

/// A matrix *-algebra on C^carrier with a chosen homogeneous basis.
struct GradedAlgebra {
  FinAbGroup group;
  Index carrier = 0;
  std::vector<COperator> basis;  // homogeneous, grouped by degree
  std::vector<int> degree;       // element index of each basis entry
  std::vector<Subspace> components;  // indexed by element index
  AlgebraBasis algebra;
  Frame frame;  // over `basis`
  std::string name;

  Index dimension() const { return Index(basis.size()); }
  /// Coefficients of x in `basis`.
  CVector coefficients(const COperator& x) const { return frame.solve(x); }
  /// The degree-g part of x.
  COperator homogeneous_part(const COperator& x, int g) const;
};

using DegreePieces = std::vector<std::pair<int, std::vector<COperator>>>;

/// Builds a graded algebra from homogeneous spanning sets.  Dependent
/// elements inside a degree are dropped; the given order is kept otherwise.
/// With validate=true the grading axioms are certified and violations throw.
GradedAlgebra make_graded(const FinAbGroup& g, Index carrier, const DegreePieces& pieces,
                          const Tolerance& tol = {}, std::string name = {}, bool validate = true);

GradedAlgebra group_algebra(const FinAbGroup& g, const Tolerance& tol = {});
/// C(G) graded by characters: e_ξ(k) = exp(2πi Σ ξ_i k_i / n_i) in degree ξ.
GradedAlgebra function_algebra(const FinAbGroup& g, const Tolerance& tol = {});
/// Closure of the generators, everything in degree 0.
GradedAlgebra trivially_graded(const FinAbGroup& g, const std::vector<COperator>& generators,
                               const Tolerance& tol = {}, std::string name = "trivial");
/// Block-diagonal ⊕ M_{b_k} on C^n with E_ij in degree labels_i − labels_j.
GradedAlgebra matrix_labels(const FinAbGroup& g, const std::vector<int>& labels,
                            const std::vector<int>& blocks = {}, const Tolerance& tol = {});
GradedAlgebra direct_sum(const GradedAlgebra& a, const GradedAlgebra& b, const Tolerance& tol = {});
/// a ⊗ b on C^{n_a} ⊗ C^{n_b} with degrees added.
GradedAlgebra tensor(const GradedAlgebra& a, const GradedAlgebra& b, const Tolerance& tol = {});

struct GradingReport {
  bool independent = false;   // ⊕ C_g is direct and spans C
  double star_algebra = 0;    // closure of the underlying space
  double multiplicative = 0;  // C_g C_h ⊆ C_{g+h}
  double adjoint = 0;         // C_g* ⊆ C_{-g}
  bool passed(const Tolerance& tol) const {
    return independent && star_algebra < tol.eps_eq && multiplicative < tol.eps_eq && adjoint < tol.eps_eq;
  }
};

GradingReport check_grading(const GradedAlgebra& c, const Tolerance& tol = {});

/// γ: C → C ⊗ C*(G), stored as the images of the orthonormal basis of C.
struct CoactionMap {
  FinAbGroup group;
  Index carrier = 0;
  Subspace source;
  std::vector<COperator> images;  // on C^carrier ⊗ ℓ²(G)

  COperator apply(const COperator& x) const;
};

CoactionMap grading_to_coaction(const GradedAlgebra& c);
/// Recovers the grading from slices of γ; throws if γ is not a coaction.
GradedAlgebra coaction_to_grading(const CoactionMap& gamma, const Tolerance& tol = {});

struct CoactionReport {
  bool injective = false;
  double multiplicative = 0;
  double star = 0;
  double comodule = 0;   // (γ⊗id)γ = (id⊗Δ)γ
  double containment = 0;  // γ(C) ⊆ C ⊗ A
  Index podles_dim = 0;
  Index expected_podles_dim = 0;
  bool podles_equal = false;  // γ(C)(1⊗A) = C⊗A
  bool passed(const Tolerance& tol) const {
    return injective && multiplicative < tol.eps_eq && star < tol.eps_eq && comodule < tol.eps_eq &&
           containment < tol.eps_eq && podles_equal && podles_dim == expected_podles_dim;
  }
};

CoactionReport verify_coaction(const CoactionMap& gamma, const Tolerance& tol = {});

/// Left coaction δ: X → C*(G) ⊗ X given by the images of the orthonormal
/// basis of X on ℓ²(G) ⊗ C^carrier.  Checked by mirroring to the right form,
/// which is exact because Δ is cocommutative.
CoactionReport verify_left_coaction(const FinAbGroup& g, const Subspace& source,
                                    const std::vector<COperator>& images, const Tolerance& tol = {});

/// Diagonal grading K = ⊕ K_g of C^dim.
struct GradedHilbertSpace {
  FinAbGroup group;
  std::vector<int> labels;  // degree of each standard basis vector

  Index dim() const { return Index(labels.size()); }
  COperator projection(int g) const;
  /// Σ_g E_g ⊗ λ_g.
  COperator corepresentation() const;
};

struct CovariantRep {
  GradedAlgebra algebra;
  GradedHilbertSpace space;
  std::vector<COperator> images;  // φ(basis_k)

  COperator apply(const COperator& x) const;
};

struct CovariantReport {
  Index rank = 0;          // dim φ(C); faithful when equal to dim C
  double homomorphism = 0;
  double covariance = 0;   // φ(C_g) K_h ⊆ K_{g+h}
  double corepresentation = 0;  // (φ⊗id)γ(c) = U(φ(c)⊗1)U*
  bool faithful = false;
  bool passed(const Tolerance& tol) const {
    return faithful && homomorphism < tol.eps_eq && covariance < tol.eps_eq && corepresentation < tol.eps_eq;
  }
};

CovariantRep canonical_covariant_rep(const GradedAlgebra& c);
CovariantReport check_covariant(const CovariantRep& rep, const Tolerance& tol = {});

struct CocycleReport {
  double unitary = 0;
  double membership = 0;  // u ∈ C ⊗ A
  double cocycle = 0;     // u₁₂ (γ⊗id)u = (id⊗Δ)u
  Index density_dim = 0;
  bool density = false;   // γ(C) u* (1⊗A) = C⊗A
  bool passed(const Tolerance& tol) const {
    return unitary < tol.eps_eq && membership < tol.eps_eq && cocycle < tol.eps_eq && density;
  }
};

CocycleReport check_cocycle(const GradedAlgebra& c, const COperator& u, const Tolerance& tol = {});
/// γ_u = Ad_u ∘ γ as a grading of the same algebra; throws if u is not a
/// cocycle satisfying the density condition.
GradedAlgebra twist_by_cocycle(const GradedAlgebra& c, const COperator& u, const Tolerance& tol = {});
/// Σ_g E_g ⊗ λ_g for a grading of C^n; a cocycle for the trivial coaction.
COperator corepresentation_cocycle(const GradedHilbertSpace& k);

GradedAlgebra transport_grading(const GradedAlgebra& c, const GroupHom& f, const Tolerance& tol = {});

/// θ_h(c) = χ(g,h) c on C_g, as linear maps on the orthonormal coordinates of C.
struct BicharacterAction {
  std::vector<LinearMap> theta;  // indexed by element index of H
  double automorphism = 0;       // multiplicative and *-preserving
  double homomorphism = 0;       // θ_{h+h'} = θ_h θ_{h'}, θ_0 = id
};

BicharacterAction action_from_bicharacter(const GradedAlgebra& c, const Bicharacter& chi,
                                          const Tolerance& tol = {});

/// A grading-preserving *-homomorphism, given on the homogeneous basis.
struct GradedMorphism {
  GradedAlgebra source;
  GradedAlgebra target;
  std::vector<COperator> images;

  COperator apply(const COperator& x) const;
};

struct MorphismReport {
  double equivariance = 0;
  double homomorphism = 0;
  bool injective = false;
  bool surjective = false;
  bool passed(const Tolerance& tol) const { return equivariance < tol.eps_eq && homomorphism < tol.eps_eq; }
};

MorphismReport check_morphism(const GradedMorphism& f, const Tolerance& tol = {});

}  // namespace qtwist
