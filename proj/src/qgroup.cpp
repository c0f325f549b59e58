#include "qtwist/qgroup.hpp"

#include <algorithm>
#include <stdexcept>

namespace qtwist {

COperator translation(const FinAbGroup& g, int element) {
  const int n = g.order();
  std::vector<Eigen::Triplet<cd>> t;
  for (int k = 0; k < n; ++k) t.emplace_back(g.add_index(element, k), k, cd(1));
  COperator out(n, n);
  out.setFromTriplets(t.begin(), t.end());
  return out;
}

COperator indicator(const FinAbGroup& g, int element) {
  return matrix_unit<cd>(g.order(), g.order(), element, element);
}

COperator multiplication(const std::vector<cd>& values) {
  const Index n = Index(values.size());
  std::vector<Eigen::Triplet<cd>> t;
  for (Index k = 0; k < n; ++k)
    if (values[std::size_t(k)] != cd(0)) t.emplace_back(k, k, values[std::size_t(k)]);
  COperator out(n, n);
  out.setFromTriplets(t.begin(), t.end());
  return out;
}

COperator kac_takesaki_unitary(const FinAbGroup& g) {
  const int n = g.order();
  COperator w(n * n, n * n);
  for (int k = 0; k < n; ++k) w += kron(indicator(g, k), translation(g, k));
  w.makeCompressed();
  return w;
}

COperator first_leg_block(const COperator& y, Index n, Index m, Index row, Index col) {
  if (y.rows() != n * m) throw std::invalid_argument("first_leg_block: shape");
  std::vector<Eigen::Triplet<cd>> t;
  for (Index c = col * m; c < (col + 1) * m; ++c)
    for (COperator::InnerIterator it(y, c); it; ++it)
      if (it.row() / m == row) t.emplace_back(it.row() % m, c % m, it.value());
  COperator out(m, m);
  out.setFromTriplets(t.begin(), t.end());
  return out;
}

COperator second_leg_block(const COperator& y, Index n, Index m, Index row, Index col) {
  if (y.rows() != n * m) throw std::invalid_argument("second_leg_block: shape");
  std::vector<Eigen::Triplet<cd>> t;
  for (Index c = 0; c < y.outerSize(); ++c) {
    if (c % m != col) continue;
    for (COperator::InnerIterator it(y, c); it; ++it)
      if (it.row() % m == row) t.emplace_back(it.row() / m, c / m, it.value());
  }
  COperator out(n, n);
  out.setFromTriplets(t.begin(), t.end());
  return out;
}

bool AxiomReport::passed(double tol) const {
  return pentagon < tol && first_slice_equal && second_slice_equal && podles_equal &&
         comultiplication < tol && coassociativity < tol && antipode < tol && bicharacter < tol;
}

namespace {

double bump(double a, double b) { return std::max(a, b); }

// (Δ⊗id)(y) = W₁₂ y₁₃ W₁₂* for y ∈ A⊗A
COperator delta_first(const QuantumGroupModel& m, const COperator& y) {
  const Index n = m.size();
  const COperator w12 = kron(m.W, identity(n));
  // y₁₃ = Σ_{ab} y_{ab-block}: conjugate the middle slot in by the flip on legs 2,3
  const COperator f23 = kron(identity(n), flip(n, n));
  const COperator y13 = product(f23, kron(y, identity(n)), f23);
  return product(w12, y13, adjoint(w12));
}

// (id⊗Δ)(y) = W₂₃ (y⊗1) W₂₃*
COperator delta_second(const QuantumGroupModel& m, const COperator& y) {
  const Index n = m.size();
  const COperator w23 = kron(identity(n), m.W);
  return product(w23, kron(y, identity(n)), adjoint(w23));
}

}  // namespace

QuantumGroupModel build(const FinAbGroup& g, const Tolerance& tol, int max_order) {
  tol.validate();
  if (g.order() > max_order) throw std::invalid_argument("group order exceeds the configured cap");
  QuantumGroupModel m;
  m.group = g;
  const int n = g.order();
  for (int k = 0; k < n; ++k) {
    m.lambda.push_back(translation(g, k));
    m.indicator.push_back(indicator(g, k));
  }
  m.W = kac_takesaki_unitary(g);
  m.A = multiplicative_closure(m.lambda, tol);
  m.A_hat = multiplicative_closure(m.indicator, tol);

  AxiomReport& r = m.report;
  const COperator I = identity(n);
  const COperator w12 = kron(m.W, I), w23 = kron(I, m.W);
  const COperator f23 = kron(I, flip(n, n));
  const COperator w13 = product(f23, w12, f23);
  r.pentagon = distance(COperator(w23 * w12), COperator(w12 * w13 * w23));

  // slices by matrix-unit functionals ω_ij
  std::vector<COperator> first, second;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      first.push_back(first_leg_block(m.W, n, n, i, j));
      second.push_back(second_leg_block(m.W, n, n, i, j));
    }
  const Subspace s1 = span_basis(first, tol), s2 = span_basis(second, tol);
  r.first_slice_equal = subspace_equal(s1, m.A.subspace, tol);
  r.second_slice_equal = subspace_equal(s2, m.A_hat.subspace, tol);
  for (const auto& x : m.A.subspace.basis()) r.first_slice = bump(r.first_slice, s1.residual(x));
  for (const auto& x : m.A_hat.subspace.basis()) r.second_slice = bump(r.second_slice, s2.residual(x));

  // comultiplication: W-conjugation against λ_g ⊗ λ_g
  std::vector<COperator> delta;
  for (int k = 0; k < n; ++k) {
    const auto& l = m.lambda[std::size_t(k)];
    delta.push_back(product(m.W, kron(l, I), adjoint(m.W)));
    r.comultiplication = bump(r.comultiplication, distance(delta.back(), kron(l, l)));
  }
  // (id⊗Δ)W = W₁₂W₁₃
  r.comultiplication = bump(r.comultiplication, distance(delta_second(m, m.W), COperator(w12 * w13)));

  // Podleś: Δ(A)(1⊗A) = A⊗A
  std::vector<COperator> pod, full;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      pod.push_back(product(delta[std::size_t(a)], kron(I, m.lambda[std::size_t(b)])));
      full.push_back(kron(m.lambda[std::size_t(a)], m.lambda[std::size_t(b)]));
    }
  const Subspace ps = span_basis(pod, tol);
  r.podles_dim = ps.dimension();
  r.podles_equal = subspace_equal(ps, span_basis(full, tol), tol);

  // coassociativity on the basis of A
  for (int k = 0; k < n; ++k)
    r.coassociativity = bump(r.coassociativity, distance(delta_first(m, delta[std::size_t(k)]),
                                                         delta_second(m, delta[std::size_t(k)])));

  // antipode
  const COperator sigma = flip(n, n);
  for (int a = 0; a < n; ++a) {
    const auto& la = m.lambda[std::size_t(a)];
    const COperator ra = COperator(la.transpose());
    r.antipode = bump(r.antipode, distance(ra, m.lambda[std::size_t(g.neg_index(a))]));
    r.antipode = bump(r.antipode, distance(COperator(ra.transpose()), la));
    const COperator lhs = product(m.W, kron(ra, I), adjoint(m.W));
    const COperator rr = COperator(delta[std::size_t(a)].transpose());  // (R⊗R)Δ on A⊗A
    r.antipode = bump(r.antipode, distance(lhs, product(sigma, rr, sigma)));
    for (int b = 0; b < n; ++b) {
      const auto& lb = m.lambda[std::size_t(b)];
      r.antipode = bump(r.antipode, distance(COperator((la * lb).transpose()),
                                             COperator(COperator(lb.transpose()) * ra)));
    }
  }

  // reduced bicharacter: (Δ̂⊗id)W = W₂₃W₁₃ and (id⊗Δ)W = W₁₂W₁₃
  const COperator what = product(sigma, adjoint(m.W), sigma);
  const COperator what12 = kron(what, I);
  const COperator lhs = product(what12, w13, adjoint(what12));
  r.bicharacter = bump(distance(lhs, COperator(w23 * w13)), r.comultiplication);

  const double eps = tol.eps_eq;
  if (!r.passed(eps) || m.A.dimension() != n || m.A_hat.dimension() != n || r.podles_dim != Index(n) * n)
    throw std::logic_error("quantum group model failed certification for " + g.to_string());
  return m;
}

COperator comultiplication(const QuantumGroupModel& m, const COperator& x, const Tolerance& tol) {
  if (m.A.subspace.residual(x) >= tol.eps_eq) throw std::invalid_argument("comultiplication: x is not in A");
  return product(m.W, kron(x, identity(m.size())), adjoint(m.W));
}

COperator unitary_antipode(const QuantumGroupModel& m, const COperator& x, const Tolerance& tol) {
  if (m.A.subspace.residual(x) >= tol.eps_eq) throw std::invalid_argument("unitary_antipode: x is not in A");
  return COperator(x.transpose());
}

COperator dual_comultiplication(const QuantumGroupModel& m, const COperator& x) {
  const Index n = m.size();
  const COperator sigma = flip(n, n);
  const COperator what = product(sigma, adjoint(m.W), sigma);
  return product(what, kron(x, identity(n)), adjoint(what));
}

DualModel dual_model(const QuantumGroupModel& m) {
  DualModel d;
  d.group = m.group;
  const Index n = m.size();
  const COperator I = identity(n);
  const COperator sigma = flip(n, n);
  d.W_hat = product(sigma, adjoint(m.W), sigma);
  d.algebra = m.A_hat;
  const COperator w12 = kron(d.W_hat, I), w23 = kron(I, d.W_hat);
  const COperator f23 = kron(I, flip(n, n));
  const COperator w13 = product(f23, w12, f23);
  d.pentagon = distance(COperator(w23 * w12), COperator(w12 * w13 * w23));

  for (int g = 0; g < n; ++g) {
    COperator expect(n * n, n * n);
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        if (m.group.add_index(a, b) == g)
          expect += kron(m.indicator[std::size_t(a)], m.indicator[std::size_t(b)]);
    d.convolution = std::max(d.convolution, distance(dual_comultiplication(m, m.indicator[std::size_t(g)]), expect));
  }

  // (Δ̂⊗id)W = Σ_g Δ̂(1_g)⊗λ_g against W₂₃W₁₃
  COperator lhs(n * n * n, n * n * n);
  for (int g = 0; g < n; ++g)
    lhs += kron(dual_comultiplication(m, m.indicator[std::size_t(g)]), m.lambda[std::size_t(g)]);
  const COperator W12 = kron(m.W, I), W23 = kron(I, m.W);
  const COperator W13 = product(f23, W12, f23);
  d.dual_comult_w = distance(lhs, COperator(W23 * W13));

  // the dual of the dual gives back W and hence Δ
  const COperator wdd = product(sigma, adjoint(d.W_hat), sigma);
  d.double_dual = distance(wdd, m.W);
  for (int g = 0; g < n; ++g) {
    const auto& l = m.lambda[std::size_t(g)];
    d.double_dual = std::max(d.double_dual, distance(product(wdd, kron(l, I), adjoint(wdd)), kron(l, l)));
  }
  return d;
}

COperator bicharacter_matrix(const Bicharacter& chi) {
  const int ng = chi.left().order(), nh = chi.right().order();
  std::vector<cd> v(std::size_t(ng * nh));
  for (int a = 0; a < ng; ++a)
    for (int b = 0; b < nh; ++b) v[std::size_t(a * nh + b)] = chi.evaluate_index(a, b);
  return multiplication(v);
}

BicharacterEquationReport verify_bicharacter_equations(const QuantumGroupModel& g, const QuantumGroupModel& h,
                                                       const COperator& chi) {
  const Index ng = g.size(), nh = h.size();
  if (chi.rows() != ng * nh || chi.cols() != ng * nh) throw std::invalid_argument("bicharacter matrix shape");
  for (Index k = 0; k < chi.outerSize(); ++k)
    for (COperator::InnerIterator it(chi, k); it; ++it)
      if (it.row() != it.col() && it.value() != cd(0))
        throw std::invalid_argument("bicharacter matrix must be diagonal in the product basis");
  BicharacterEquationReport r;
  const COperator Ig = identity(ng), Ih = identity(nh);
  const COperator sg = flip(ng, ng), sh = flip(nh, nh);
  const COperator wg = product(sg, adjoint(g.W), sg), wh = product(sh, adjoint(h.W), sh);

  // first leg: Ŵ₁₂ χ₁₃ Ŵ₁₂* on ℓ²G⊗ℓ²G⊗ℓ²H
  const COperator f = kron(Ig, flip(nh, ng));  // ℓ²G⊗ℓ²H⊗ℓ²G → ℓ²G⊗ℓ²G⊗ℓ²H
  const COperator chi13 = product(f, kron(chi, Ig), adjoint(f));
  const COperator chi23 = kron(Ig, chi);
  const COperator wg12 = kron(wg, Ih);
  r.first_leg = distance(product(wg12, chi13, adjoint(wg12)), COperator(chi23 * chi13));

  // second leg on ℓ²G⊗ℓ²H⊗ℓ²H: (id⊗Δ̂_H)χ = Ŵ_H,23 χ₁₂ Ŵ_H,23*
  const COperator chi12 = kron(chi, Ih);
  const COperator f2 = kron(Ig, flip(nh, nh));
  const COperator chi13b = product(f2, chi12, f2);
  const COperator wh23 = kron(Ig, wh);
  r.second_leg = distance(product(wh23, chi12, adjoint(wh23)), COperator(chi12 * chi13b));
  return r;
}

}  // namespace qtwist
