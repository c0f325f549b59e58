#include "qtwist/abgroup.hpp"

#include <cmath>
#include <numbers>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace qtwist {

std::int64_t gcd64(std::int64_t a, std::int64_t b) { return std::gcd(a, b); }
std::int64_t lcm64(std::int64_t a, std::int64_t b) { return std::lcm(a, b); }
std::int64_t mod64(std::int64_t a, std::int64_t n) {
  const std::int64_t r = a % n;
  return r < 0 ? r + n : r;
}

FinAbGroup::FinAbGroup(std::vector<int> cycles) : cycles_(std::move(cycles)) {
  std::int64_t order = 1;
  for (int n : cycles_) {
    if (n < 2) throw std::invalid_argument("cycle orders must be at least 2");
    order *= n;
    if (order > (1 << 20)) throw std::invalid_argument("group order too large");
  }
  order_ = static_cast<int>(order);
}

GroupElement FinAbGroup::element(int index) const {
  if (index < 0 || index >= order_) throw std::out_of_range("group element index");
  GroupElement a(cycles_.size());
  for (int i = rank() - 1; i >= 0; --i) {
    a[std::size_t(i)] = index % cycles_[std::size_t(i)];
    index /= cycles_[std::size_t(i)];
  }
  return a;
}

int FinAbGroup::index(const GroupElement& a) const {
  check(a);
  int idx = 0;
  for (std::size_t i = 0; i < cycles_.size(); ++i) idx = idx * cycles_[i] + a[i];
  return idx;
}

GroupElement FinAbGroup::generator(int i) const {
  GroupElement a = zero();
  a.at(std::size_t(i)) = 1;
  return a;
}

GroupElement FinAbGroup::add(const GroupElement& a, const GroupElement& b) const {
  check(a);
  check(b);
  GroupElement c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) c[i] = (a[i] + b[i]) % cycles_[i];
  return c;
}

GroupElement FinAbGroup::neg(const GroupElement& a) const {
  check(a);
  GroupElement c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) c[i] = (cycles_[i] - a[i]) % cycles_[i];
  return c;
}

bool FinAbGroup::contains(const GroupElement& a) const {
  if (a.size() != cycles_.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] < 0 || a[i] >= cycles_[i]) return false;
  return true;
}

void FinAbGroup::check(const GroupElement& a) const {
  if (!contains(a)) throw std::invalid_argument("element does not belong to " + to_string());
}

std::string FinAbGroup::to_string() const {
  if (cycles_.empty()) return "0";
  std::ostringstream os;
  for (std::size_t i = 0; i < cycles_.size(); ++i) os << (i ? "+" : "") << "Z/" << cycles_[i];
  return os.str();
}

// ---------------------------------------------------------------------------

GroupHom GroupHom::make(FinAbGroup source, FinAbGroup target, std::vector<std::vector<int>> m) {
  if (int(m.size()) != target.rank()) throw std::invalid_argument("hom matrix row count");
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (int(m[i].size()) != source.rank()) throw std::invalid_argument("hom matrix column count");
    for (auto& x : m[i]) x = int(mod64(x, target.cycles()[i]));
  }
  GroupHom f{std::move(source), std::move(target), std::move(m)};
  if (!f.well_defined())
    throw std::invalid_argument("matrix does not define a homomorphism (generator orders not respected)");
  return f;
}

GroupHom GroupHom::identity(const FinAbGroup& g) {
  std::vector<std::vector<int>> m(std::size_t(g.rank()), std::vector<int>(std::size_t(g.rank()), 0));
  for (int i = 0; i < g.rank(); ++i) m[std::size_t(i)][std::size_t(i)] = 1;
  return make(g, g, std::move(m));
}

GroupHom GroupHom::zero(const FinAbGroup& s, const FinAbGroup& t) {
  return make(s, t, std::vector<std::vector<int>>(std::size_t(t.rank()), std::vector<int>(std::size_t(s.rank()), 0)));
}

bool GroupHom::well_defined() const {
  for (int i = 0; i < target.rank(); ++i)
    for (int j = 0; j < source.rank(); ++j)
      if (mod64(std::int64_t(source.cycles()[std::size_t(j)]) * matrix[std::size_t(i)][std::size_t(j)],
                target.cycles()[std::size_t(i)]) != 0)
        return false;
  return true;
}

GroupElement GroupHom::apply(const GroupElement& a) const {
  source.check(a);
  GroupElement b(std::size_t(target.rank()), 0);
  for (int i = 0; i < target.rank(); ++i) {
    std::int64_t s = 0;
    for (int j = 0; j < source.rank(); ++j) s += std::int64_t(matrix[std::size_t(i)][std::size_t(j)]) * a[std::size_t(j)];
    b[std::size_t(i)] = int(mod64(s, target.cycles()[std::size_t(i)]));
  }
  return b;
}

GroupHom compose(const GroupHom& g, const GroupHom& f) {
  if (!(f.target == g.source)) throw std::invalid_argument("compose: groups do not match");
  std::vector<std::vector<int>> m(std::size_t(g.target.rank()), std::vector<int>(std::size_t(f.source.rank()), 0));
  for (int j = 0; j < f.source.rank(); ++j) {
    const auto img = g.apply(f.apply(f.source.generator(j)));
    for (int i = 0; i < g.target.rank(); ++i) m[std::size_t(i)][std::size_t(j)] = img[std::size_t(i)];
  }
  return GroupHom::make(f.source, g.target, std::move(m));
}

// ---------------------------------------------------------------------------

std::complex<double> Phase::value() const {
  const std::int64_t r = mod64(num, den);
  if (r == 0) return {1.0, 0.0};
  // exact values at the quarter turns keep the ±1, ±i entries clean
  if (4 * r == den) return {0.0, 1.0};
  if (2 * r == den) return {-1.0, 0.0};
  if (4 * r == 3 * den) return {0.0, -1.0};
  const double t = 2.0 * std::numbers::pi * double(r) / double(den);
  return {std::cos(t), std::sin(t)};
}

Bicharacter::Bicharacter(FinAbGroup left, FinAbGroup right, std::vector<std::vector<int>> exponents)
    : left_(std::move(left)), right_(std::move(right)), m_(std::move(exponents)) {
  if (int(m_.size()) != left_.rank()) throw std::invalid_argument("bicharacter exponent row count");
  for (int i = 0; i < left_.rank(); ++i) {
    if (int(m_[std::size_t(i)].size()) != right_.rank())
      throw std::invalid_argument("bicharacter exponent column count");
    for (int j = 0; j < right_.rank(); ++j) {
      const int g = modulus(i, j);
      auto& x = m_[std::size_t(i)][std::size_t(j)];
      x = int(mod64(x, g));
      lcm_ = lcm64(lcm_, g);
    }
  }
}

Bicharacter Bicharacter::trivial(const FinAbGroup& left, const FinAbGroup& right) {
  return Bicharacter(left, right,
                     std::vector<std::vector<int>>(std::size_t(left.rank()), std::vector<int>(std::size_t(right.rank()), 0)));
}

int Bicharacter::modulus(int i, int j) const {
  return int(gcd64(left_.cycles()[std::size_t(i)], right_.cycles()[std::size_t(j)]));
}

Phase Bicharacter::phase(const GroupElement& a, const GroupElement& b) const {
  left_.check(a);
  right_.check(b);
  std::int64_t num = 0;
  for (int i = 0; i < left_.rank(); ++i)
    for (int j = 0; j < right_.rank(); ++j) {
      const std::int64_t g = modulus(i, j);
      num += std::int64_t(a[std::size_t(i)]) * m_[std::size_t(i)][std::size_t(j)] % g * b[std::size_t(j)] % g * (lcm_ / g);
      num = mod64(num, lcm_);
    }
  return {num, lcm_};
}

std::complex<double> Bicharacter::evaluate(const GroupElement& a, const GroupElement& b) const {
  return phase(a, b).value();
}

std::complex<double> Bicharacter::evaluate_index(int a, int b) const {
  return evaluate(left_.element(a), right_.element(b));
}

bool Bicharacter::is_trivial() const {
  for (const auto& row : m_)
    for (int x : row)
      if (x != 0) return false;
  return true;
}

std::vector<std::vector<std::complex<double>>> Bicharacter::value_table() const {
  std::vector<std::vector<std::complex<double>>> t(std::size_t(left_.order()),
                                                   std::vector<std::complex<double>>(std::size_t(right_.order())));
  for (int a = 0; a < left_.order(); ++a)
    for (int b = 0; b < right_.order(); ++b) t[std::size_t(a)][std::size_t(b)] = evaluate_index(a, b);
  return t;
}

Bicharacter dual_bicharacter(const Bicharacter& chi) {
  std::vector<std::vector<int>> m(std::size_t(chi.right().rank()), std::vector<int>(std::size_t(chi.left().rank()), 0));
  for (int i = 0; i < chi.left().rank(); ++i)
    for (int j = 0; j < chi.right().rank(); ++j)
      m[std::size_t(j)][std::size_t(i)] = -chi.exponents()[std::size_t(i)][std::size_t(j)];
  return Bicharacter(chi.right(), chi.left(), std::move(m));
}

std::int64_t bicharacter_count(const FinAbGroup& g, const FinAbGroup& h) {
  std::int64_t count = 1;
  for (int n : g.cycles())
    for (int m : h.cycles()) {
      count *= gcd64(n, m);
      if (count > (std::int64_t(1) << 40)) return count;
    }
  return count;
}

std::vector<Bicharacter> enumerate_bicharacters(const FinAbGroup& g, const FinAbGroup& h, std::int64_t cap) {
  const std::int64_t count = bicharacter_count(g, h);
  if (count > cap) throw std::invalid_argument("too many bicharacters to enumerate");
  std::vector<Bicharacter> out;
  out.reserve(std::size_t(count));
  const std::size_t r = std::size_t(g.rank()), c = std::size_t(h.rank());
  for (std::int64_t code = 0; code < count; ++code) {
    std::vector<std::vector<int>> m(r, std::vector<int>(c, 0));
    std::int64_t rest = code;
    // last entry varies fastest
    for (std::size_t k = r * c; k-- > 0;) {
      const std::size_t i = k / c, j = k % c;
      const int mod = int(gcd64(g.cycles()[i], h.cycles()[j]));
      m[i][j] = int(rest % mod);
      rest /= mod;
    }
    out.emplace_back(g, h, std::move(m));
  }
  return out;
}

Bicharacter pullback(const Bicharacter& chi2, const GroupHom& f, const GroupHom& g) {
  if (!(f.target == chi2.left()) || !(g.target == chi2.right()))
    throw std::invalid_argument("pullback: homomorphism targets do not match the bicharacter");
  if (!f.well_defined() || !g.well_defined())
    throw std::invalid_argument("pullback: not a homomorphism");
  const FinAbGroup& G = f.source;
  const FinAbGroup& H = g.source;
  std::vector<std::vector<int>> m(std::size_t(G.rank()), std::vector<int>(std::size_t(H.rank()), 0));
  for (int i = 0; i < G.rank(); ++i)
    for (int j = 0; j < H.rank(); ++j) {
      const Phase p = chi2.phase(f.apply(G.generator(i)), g.apply(H.generator(j)));
      const std::int64_t mod = gcd64(G.cycles()[std::size_t(i)], H.cycles()[std::size_t(j)]);
      // χ(e_i, e_j) is a gcd(n_i, m_j)-th root of unity
      if ((p.num * mod) % p.den != 0) throw std::logic_error("pullback produced a non-reduced phase");
      m[std::size_t(i)][std::size_t(j)] = int(p.num * mod / p.den);
    }
  return Bicharacter(G, H, std::move(m));
}

Bicharacter reduced_bicharacter(const FinAbGroup& g) {
  std::vector<std::vector<int>> m(std::size_t(g.rank()), std::vector<int>(std::size_t(g.rank()), 0));
  for (int i = 0; i < g.rank(); ++i) m[std::size_t(i)][std::size_t(i)] = g.cycles()[std::size_t(i)] - 1;
  return Bicharacter(g, g, std::move(m));
}

Bicharacter canonical_pairing(const FinAbGroup& g) {
  std::vector<std::vector<int>> m(std::size_t(g.rank()), std::vector<int>(std::size_t(g.rank()), 0));
  for (int i = 0; i < g.rank(); ++i) m[std::size_t(i)][std::size_t(i)] = 1;
  return Bicharacter(g, g, std::move(m));
}

GroupHom induced_hom_right(const Bicharacter& chi) {
  const FinAbGroup& G = chi.left();
  const FinAbGroup& H = chi.right();
  std::vector<std::vector<int>> m(std::size_t(G.rank()), std::vector<int>(std::size_t(H.rank()), 0));
  for (int i = 0; i < G.rank(); ++i)
    for (int j = 0; j < H.rank(); ++j)
      m[std::size_t(i)][std::size_t(j)] =
          chi.exponents()[std::size_t(i)][std::size_t(j)] * (G.cycles()[std::size_t(i)] / chi.modulus(i, j));
  return GroupHom::make(H, G, std::move(m));
}

}  // namespace qtwist
