#pragma once

// The quantum group (C*(G), Δ) of a finite abelian group on ℓ²(G), built
// from the Kac-Takesaki unitary W(δ_g ⊗ δ_h) = δ_g ⊗ δ_{g+h}.

#include "qtwist/abgroup.hpp"
#include "qtwist/matspan.hpp"

#include <string>
#include <vector>

namespace qtwist {

/// Left translation λ_g δ_k = δ_{g+k} on ℓ²(G).
COperator translation(const FinAbGroup& g, int element);
/// Diagonal projection onto δ_g.
COperator indicator(const FinAbGroup& g, int element);
/// Multiplication by the function k ↦ values[k].
COperator multiplication(const std::vector<cd>& values);
/// W = Σ_g 1_g ⊗ λ_g on ℓ²(G) ⊗ ℓ²(G).
COperator kac_takesaki_unitary(const FinAbGroup& g);

struct AxiomReport {
  double pentagon = 0;
  double first_slice = 0;    // 0 when span of first-leg slices equals A
  double second_slice = 0;   // 0 when span of second-leg slices equals Â
  bool first_slice_equal = false;
  bool second_slice_equal = false;
  Index podles_dim = 0;      // dim span Δ(A)(1⊗A), expected |G|²
  bool podles_equal = false; // span equals A⊗A
  double comultiplication = 0;  // W-conjugation vs λ_g ⊗ λ_g, and (id⊗Δ)W = W₁₂W₁₃
  double coassociativity = 0;
  double antipode = 0;          // R² = id, R anti-multiplicative, Δ∘R = σ(R⊗R)Δ
  double bicharacter = 0;       // W in Â⊗A satisfies both character equations
  bool passed(double tol) const;
};

struct QuantumGroupModel {
  FinAbGroup group;
  COperator W;
  std::vector<COperator> lambda;     // indexed by element index
  std::vector<COperator> indicator;  // indexed by element index
  AlgebraBasis A;                    // C*(G)
  AlgebraBasis A_hat;                // C(G)
  AxiomReport report;

  Index size() const { return Index(group.order()); }
};

QuantumGroupModel build(const FinAbGroup& g, const Tolerance& tol = {}, int max_order = 12);

/// Δ(x) = W(x⊗1)W*; throws when x ∉ A.
COperator comultiplication(const QuantumGroupModel& m, const COperator& x, const Tolerance& tol = {});
/// R(x) = x^T, so R(λ_g) = λ_{-g}; throws when x ∉ A.
COperator unitary_antipode(const QuantumGroupModel& m, const COperator& x, const Tolerance& tol = {});

struct DualModel {
  FinAbGroup group;
  COperator W_hat;  // ΣW*Σ
  AlgebraBasis algebra;  // C(G)
  double pentagon = 0;
  double convolution = 0;   // Δ̂(1_g) vs Σ_{a+b=g} 1_a⊗1_b
  double dual_comult_w = 0; // (Δ̂⊗id)W = W₂₃W₁₃
  double double_dual = 0;   // comultiplication from the dual of the dual vs Δ
  bool passed(double tol) const {
    return pentagon < tol && convolution < tol && dual_comult_w < tol && double_dual < tol;
  }
};

DualModel dual_model(const QuantumGroupModel& m);
/// Δ̂(x) = Ŵ(x⊗1)Ŵ*.
COperator dual_comultiplication(const QuantumGroupModel& m, const COperator& x);

/// Residuals of (Δ̂_G⊗id)χ = χ₂₃χ₁₃ and (id⊗Δ̂_H)χ = χ₁₂χ₁₃ for χ diagonal
/// on ℓ²(G)⊗ℓ²(H).
struct BicharacterEquationReport {
  double first_leg = 0;
  double second_leg = 0;
  bool passed(double tol) const { return first_leg < tol && second_leg < tol; }
};

BicharacterEquationReport verify_bicharacter_equations(const QuantumGroupModel& g,
                                                       const QuantumGroupModel& h,
                                                       const COperator& chi);

/// Σ χ(g,h) 1_g ⊗ 1_h.
COperator bicharacter_matrix(const Bicharacter& chi);

/// Second-leg slice of an operator on C^n ⊗ ℓ²(G): the n×n block at the
/// second-leg entry (row, col).
COperator second_leg_block(const COperator& y, Index n, Index m, Index row, Index col);
/// First-leg block (row, col) of an operator on C^n ⊗ C^m.
COperator first_leg_block(const COperator& y, Index n, Index m, Index row, Index col);

}  // namespace qtwist
