#pragma once

// Finite abelian groups ⊕ Z/n_i, homomorphisms as integer matrices, and
// bicharacters as integer exponent matrices.

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

namespace qtwist {

using GroupElement = std::vector<int>;

class FinAbGroup {
 public:
  FinAbGroup() = default;
  explicit FinAbGroup(std::vector<int> cycles);

  const std::vector<int>& cycles() const { return cycles_; }
  int rank() const { return static_cast<int>(cycles_.size()); }
  int order() const { return order_; }

  /// Lexicographic enumeration, first coordinate most significant.
  GroupElement element(int index) const;
  int index(const GroupElement& a) const;

  GroupElement zero() const { return GroupElement(cycles_.size(), 0); }
  GroupElement generator(int i) const;
  GroupElement add(const GroupElement& a, const GroupElement& b) const;
  GroupElement neg(const GroupElement& a) const;
  int add_index(int a, int b) const { return index(add(element(a), element(b))); }
  int neg_index(int a) const { return index(neg(element(a))); }

  bool contains(const GroupElement& a) const;
  void check(const GroupElement& a) const;  // throws on mismatch

  std::string to_string() const;
  bool operator==(const FinAbGroup& o) const { return cycles_ == o.cycles_; }

 private:
  std::vector<int> cycles_;
  int order_ = 1;
};

/// Homomorphism source → target; column j is the image of generator j.
struct GroupHom {
  FinAbGroup source;
  FinAbGroup target;
  std::vector<std::vector<int>> matrix;  // target.rank() rows, source.rank() columns

  static GroupHom make(FinAbGroup source, FinAbGroup target, std::vector<std::vector<int>> m);
  static GroupHom identity(const FinAbGroup& g);
  static GroupHom zero(const FinAbGroup& s, const FinAbGroup& t);

  /// n_j · F_ij ≡ 0 (mod m_i) for every generator j.
  bool well_defined() const;
  GroupElement apply(const GroupElement& a) const;
  int apply_index(int a) const { return target.index(apply(source.element(a))); }
};

/// g ∘ f.
GroupHom compose(const GroupHom& g, const GroupHom& f);

/// An exact root of unity exp(2πi·num/den).
struct Phase {
  std::int64_t num = 0;
  std::int64_t den = 1;
  std::complex<double> value() const;
  bool operator==(const Phase& o) const { return num * o.den == o.num * den; }
};

class Bicharacter {
 public:
  Bicharacter() = default;
  /// exponents: left.rank() × right.rank(); entries are reduced mod gcd(n_i, m_j).
  Bicharacter(FinAbGroup left, FinAbGroup right, std::vector<std::vector<int>> exponents);

  static Bicharacter trivial(const FinAbGroup& left, const FinAbGroup& right);

  const FinAbGroup& left() const { return left_; }
  const FinAbGroup& right() const { return right_; }
  const std::vector<std::vector<int>>& exponents() const { return m_; }
  int modulus(int i, int j) const;  // gcd(n_i, m_j)

  Phase phase(const GroupElement& a, const GroupElement& b) const;
  std::complex<double> evaluate(const GroupElement& a, const GroupElement& b) const;
  std::complex<double> evaluate_index(int a, int b) const;
  bool is_trivial() const;

  /// |G| × |H| table of values, indexed by element indices.
  std::vector<std::vector<std::complex<double>>> value_table() const;

  bool operator==(const Bicharacter& o) const {
    return left_ == o.left_ && right_ == o.right_ && m_ == o.m_;
  }

 private:
  FinAbGroup left_, right_;
  std::vector<std::vector<int>> m_;
  std::int64_t lcm_ = 1;
};

/// χ̂(b, a) = conj χ(a, b).
Bicharacter dual_bicharacter(const Bicharacter& chi);

/// All bicharacters G × H → T; throws past `cap` candidates.
std::vector<Bicharacter> enumerate_bicharacters(const FinAbGroup& g, const FinAbGroup& h,
                                                std::int64_t cap = 100000);

std::int64_t bicharacter_count(const FinAbGroup& g, const FinAbGroup& h);

/// χ(a, b) = χ₂(f(a), g(b)).
Bicharacter pullback(const Bicharacter& chi2, const GroupHom& f, const GroupHom& g);

/// Pairing of G with its dual realised as the character group of C(G):
/// characters e_ξ(k) = exp(2πi Σ ξ_i k_i / n_i); the pairing is
/// (g, ξ) ↦ conj e_ξ(g), which is how translations commute past
/// multiplication operators.
Bicharacter reduced_bicharacter(const FinAbGroup& g);

/// (g, ξ) ↦ e_ξ(g).
Bicharacter canonical_pairing(const FinAbGroup& g);

/// Reads off the homomorphism H → Ĝ ≅ G induced by χ through the canonical
/// pairing: χ(a, b) = ⟨a, ĝ(b)⟩.
GroupHom induced_hom_right(const Bicharacter& chi);

std::int64_t gcd64(std::int64_t a, std::int64_t b);
std::int64_t lcm64(std::int64_t a, std::int64_t b);
std::int64_t mod64(std::int64_t a, std::int64_t n);

}  // namespace qtwist
