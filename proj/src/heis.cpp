#include "qtwist/heis.hpp"

#include <algorithm>
#include <stdexcept>

namespace qtwist {

namespace {

void check_groups(const RepPair& p, const Bicharacter& chi) {
  if (!(p.G == chi.left()) || !(p.H == chi.right()))
    throw std::invalid_argument("pair and bicharacter are over different groups");
}

// U_g for g = Σ a_i e_i as the ordered product of generator powers
COperator from_generators(const FinAbGroup& g, const std::vector<COperator>& images, int element, Index dim) {
  COperator out = identity(dim);
  const GroupElement a = g.element(element);
  for (int i = 0; i < g.rank(); ++i) {
    const COperator& gen = images[std::size_t(g.index(g.generator(i)))];
    for (int k = 0; k < a[std::size_t(i)]; ++k) out = product(out, gen);
  }
  return out;
}

double rep_defect(const FinAbGroup& g, const std::vector<COperator>& images, Index dim) {
  if (Index(images.size()) != g.order()) throw std::invalid_argument("representation must list every element");
  double worst = 0;
  const COperator I = identity(dim);
  for (int e = 0; e < g.order(); ++e) {
    const auto& x = images[std::size_t(e)];
    worst = std::max(worst, distance(COperator(adjoint(x) * x), I));
    worst = std::max(worst, distance(x, from_generators(g, images, e, dim)));
  }
  // generator orders and commutation
  for (int i = 0; i < g.rank(); ++i) {
    const auto& gi = images[std::size_t(g.index(g.generator(i)))];
    COperator power = I;
    for (int k = 0; k < g.cycles()[std::size_t(i)]; ++k) power = product(power, gi);
    worst = std::max(worst, distance(power, I));
    for (int j = 0; j < g.rank(); ++j) {
      const auto& gj = images[std::size_t(g.index(g.generator(j)))];
      worst = std::max(worst, double(commutator(gi, gj).norm()));
    }
  }
  return worst;
}

RelationCheck relation(const RepPair& p, const Bicharacter& chi, const Tolerance& tol, bool anti) {
  check_groups(p, chi);
  RelationCheck r;
  for (int i = 0; i < p.G.rank(); ++i)
    for (int j = 0; j < p.H.rank(); ++j) {
      const int g = p.G.index(p.G.generator(i)), h = p.H.index(p.H.generator(j));
      const auto& u = p.U[std::size_t(g)];
      const auto& v = p.V[std::size_t(h)];
      const cd c = chi.evaluate_index(g, h);
      const COperator diff = anti ? COperator(v * u - c * (u * v)) : COperator(u * v - c * (v * u));
      r.residual = std::max(r.residual, double(diff.norm()));
    }
  r.residual = std::max(r.residual, representation_defect(p));
  r.holds = r.residual < tol.eps_eq;
  return r;
}

COperator diag_row(const Bicharacter& chi, int g) {
  std::vector<cd> v;
  for (int k = 0; k < chi.right().order(); ++k) v.push_back(chi.evaluate_index(g, k));
  return multiplication(v);
}

}  // namespace

double representation_defect(const RepPair& p) {
  return std::max(rep_defect(p.G, p.U, p.dim), rep_defect(p.H, p.V, p.dim));
}

RelationCheck is_heisenberg(const RepPair& p, const Bicharacter& chi, const Tolerance& tol) {
  return relation(p, chi, tol, false);
}

RelationCheck is_anti_heisenberg(const RepPair& p, const Bicharacter& chi, const Tolerance& tol) {
  return relation(p, chi, tol, true);
}

RepPair canonical_heisenberg(const Bicharacter& chi) {
  RepPair p{chi.left(), chi.right(), chi.right().order(), {}, {}, "canonical"};
  for (int g = 0; g < p.G.order(); ++g) p.U.push_back(diag_row(chi, g));
  for (int h = 0; h < p.H.order(); ++h) p.V.push_back(translation(p.H, h));
  return p;
}

RepPair composite_heisenberg(const Bicharacter& chi) {
  const int ng = chi.left().order(), nh = chi.right().order();
  RepPair p{chi.left(), chi.right(), Index(ng) * nh, {}, {}, "composite"};
  for (int g = 0; g < ng; ++g) p.U.push_back(kron(translation(p.G, g), diag_row(chi, g)));
  for (int h = 0; h < nh; ++h) p.V.push_back(kron(identity(ng), translation(p.H, h)));
  return p;
}

RepPair amplified(const RepPair& p, Index m) {
  RepPair q{p.G, p.H, p.dim * m, {}, {}, p.provenance + "+amplified"};
  const COperator I = identity(m);
  for (const auto& u : p.U) q.U.push_back(kron(u, I));
  for (const auto& v : p.V) q.V.push_back(kron(v, I));
  return q;
}

RepPair conjugate_pair(const RepPair& p) {
  RepPair q = p;
  for (auto& u : q.U) u = COperator(u.conjugate());
  for (auto& v : q.V) v = COperator(v.conjugate());
  q.provenance = p.provenance + "+conjugate";
  return q;
}

RepPair swapped(const RepPair& p) {
  return RepPair{p.H, p.G, p.dim, p.V, p.U, p.provenance + "+swapped"};
}

RepPair conjugated(const RepPair& p, const COperator& w) {
  RepPair q = p;
  const COperator ws = adjoint(w);
  for (auto& u : q.U) u = product(w, u, ws);
  for (auto& v : q.V) v = product(w, v, ws);
  q.provenance = p.provenance + "+Ad";
  return q;
}

double commutation_check(const RepPair& h, const RepPair& a) {
  if (!(h.G == a.G) || !(h.H == a.H)) throw std::invalid_argument("commutation_check: pairs over different groups");
  double worst = 0;
  for (int i = 0; i < h.G.rank(); ++i)
    for (int j = 0; j < h.H.rank(); ++j) {
      const int g = h.G.index(h.G.generator(i)), k = h.H.index(h.H.generator(j));
      const COperator x = kron(h.U[std::size_t(g)], a.U[std::size_t(g)]);
      const COperator y = kron(h.V[std::size_t(k)], a.V[std::size_t(k)]);
      worst = std::max(worst, operator_norm(commutator(x, y)));
    }
  return worst;
}

double heisenberg_operator_residual(const RepPair& p, const Bicharacter& chi) {
  check_groups(p, chi);
  const Index ng = p.G.order(), nh = p.H.order();
  COperator wa(ng * nh * p.dim, ng * nh * p.dim), wb = wa;
  for (int g = 0; g < ng; ++g) wa += kron(indicator(p.G, g), identity(nh), p.U[std::size_t(g)]);
  for (int h = 0; h < nh; ++h) wb += kron(identity(ng), indicator(p.H, h), p.V[std::size_t(h)]);
  const COperator chi12 = kron(bicharacter_matrix(chi), identity(p.dim));
  return distance(COperator(wa * wb), COperator(wb * wa * chi12));
}

double heisenberg_pentagon_residual(const QuantumGroupModel& m) {
  const Index n = m.size();
  const COperator I = identity(n);
  const COperator w12 = kron(m.W, I), w23 = kron(I, m.W);
  const COperator f23 = kron(I, flip(n, n));
  const COperator w13 = product(f23, w12, f23);
  return distance(COperator(w23 * w12), COperator(w12 * w13 * w23));
}

}  // namespace qtwist
