#include "qtwist/suite.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <iomanip>
#include <fstream>
#include <random>
#include <sstream>

namespace qtwist {

namespace {

class Verdicts {
 public:
  void set(const std::string& name, bool ok) {
    j_[name] = ok;
    if (!ok) {
      all_ = false;
      failed_.push_back(name);
    }
  }
  bool all() const { return all_; }
  const Json& json() const { return j_; }
  const std::vector<std::string>& failed() const { return failed_; }

 private:
  Json j_ = Json::object();
  bool all_ = true;
  std::vector<std::string> failed_;
};

Json algebra_summary(const GradedAlgebra& a) {
  return Json{{"name", a.name}, {"carrier", a.carrier}, {"dim", a.dimension()}};
}

Json tolerance_json(const Tolerance& tol) { return Json{{"eps_rank", tol.eps_rank}, {"eps_eq", tol.eps_eq}}; }

Json dense_json(const COperator& x) {
  const CMatrix m = to_dense(x);
  Json rows = Json::array();
  for (Index r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (Index c = 0; c < m.cols(); ++c) row.push_back(complex_to_json(m(r, c)));
    rows.push_back(row);
  }
  return rows;
}

Json triplets_json(const StructureTable& t) {
  Json out = Json::array();
  for (const auto& [a, b, q, v] : t.triplets()) out.push_back(Json{{"i", a}, {"j", b}, {"k", q}, {"value", complex_to_json(v)}});
  return out;
}

double rounded(double x) {
  // residuals are reported to 3 significant digits so reruns are byte-identical
  if (x == 0 || !std::isfinite(x)) return x;
  std::ostringstream s;
  s << std::setprecision(3) << x;
  return std::stod(s.str());
}

RepPair witness_pair(const std::string& name, const Bicharacter& chi) {
  if (name == "canonical") return canonical_heisenberg(chi);
  if (name == "composite") return composite_heisenberg(chi);
  if (name == "amplified") return amplified(canonical_heisenberg(chi), 2);
  throw std::invalid_argument("unknown witness pair \"" + name + "\"");
}

AlgebraBasis full_matrices(Index n, const Tolerance& tol) {
  std::vector<COperator> units;
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) units.push_back(matrix_unit<cd>(n, n, i, j));
  return {span_basis(n, std::span<const COperator>(units), tol), true};
}

Index center_dim(const CrossedProduct& x, const Tolerance& tol) {
  const auto gens = x.generators();
  return center<cd>(x.algebra, std::span<const COperator>(gens), tol).dimension();
}

std::string group_name(const FinAbGroup& g) { return g.to_string(); }

}  // namespace

Json run_battery(const Instance& inst, const Tolerance& tol, const BatteryOptions& opt) {
  const Bicharacter& chi = inst.chi;
  Json report;
  report["name"] = inst.name;
  report["inputs"] = Json{{"G", chi.left().cycles()},
                          {"H", chi.right().cycles()},
                          {"exponents", chi.exponents()},
                          {"C", algebra_summary(inst.c)},
                          {"D", algebra_summary(inst.d)}};
  report["tolerance"] = tolerance_json(tol);
  Json res = Json::object(), dims = Json::object();
  Verdicts v;

  for (const auto& [key, g] : {std::pair<const char*, FinAbGroup>{"qgroup_G", chi.left()}, {"qgroup_H", chi.right()}}) {
    bool ok = true;
    try {
      build(g, tol);
    } catch (const std::exception&) {
      ok = false;
    }
    v.set(key, ok);
  }

  for (const auto& [key, a] : {std::pair<const char*, const GradedAlgebra*>{"coaction_C", &inst.c}, {"coaction_D", &inst.d}}) {
    const CoactionReport cr = verify_coaction(grading_to_coaction(*a), tol);
    res[key] = Json{{"multiplicative", rounded(cr.multiplicative)},
                    {"star", rounded(cr.star)},
                    {"comodule", rounded(cr.comodule)},
                    {"containment", rounded(cr.containment)},
                    {"podles_dim", cr.podles_dim}};
    v.set(key, cr.passed(tol));
  }

  const std::vector<std::string> names{"canonical", "composite", "amplified"};
  for (const auto& n : names) {
    const RelationCheck rc = is_heisenberg(witness_pair(n, chi), chi, tol);
    res["heisenberg_" + n] = rounded(rc.residual);
    v.set("heisenberg_" + n, rc.holds);
  }

  const RepPair pair = witness_pair(opt.witness, chi);
  const CrossedProduct x = build_via_heisenberg(inst.c, inst.d, chi, pair, tol);
  report["witness"] = x.provenance;
  const CrossedProductChecks& k = x.checks;
  res["boxtimes"] = Json{{"closure", rounded(k.closure)},
                         {"commutation", rounded(k.commutation)},
                         {"equivariant_commute", rounded(k.equivariant_commute)},
                         {"iota_c_hom", rounded(k.iota_c_hom)},
                         {"iota_d_hom", rounded(k.iota_d_hom)}};
  v.set("boxtimes_axioms", k.passed(tol));
  dims["C"] = inst.c.dimension();
  dims["D"] = inst.d.dimension();
  dims["boxtimes"] = x.dimension();
  dims["expected"] = inst.c.dimension() * inst.d.dimension();
  dims["witness"] = x.witness_dim;
  v.set("dimension_law", k.dimension_law && x.dimension() == inst.c.dimension() * inst.d.dimension());

  bool iso_found = true;
  if (opt.covariant) {
    const CrossedProduct y =
        build_via_covariant(canonical_covariant_rep(inst.c), canonical_covariant_rep(inst.d), chi, tol);
    dims["covariant"] = y.dimension();
    v.set("covariant_axioms", y.checks.passed(tol));
    const auto eq = equivalent(x, y, tol);
    res["routes_multiplicativity"] = eq ? rounded(eq->certificate.multiplicativity) : -1.0;
    v.set("routes_equivalent", eq.has_value());
    iso_found = iso_found && eq.has_value();
  }
  if (opt.witnesses) {
    for (const auto& n : names) {
      if (n == opt.witness) continue;
      const CrossedProduct y = build_via_heisenberg(inst.c, inst.d, chi, witness_pair(n, chi), tol);
      const auto eq = equivalent(x, y, tol);
      res["witness_" + n + "_multiplicativity"] = eq ? rounded(eq->certificate.multiplicativity) : -1.0;
      v.set("witness_" + n, eq.has_value());
      iso_found = iso_found && eq.has_value();
    }
  }
  if (opt.podles) {
    const PodlesSpanReport p = podles_span_check(x, tol);
    dims["podles"] = p.dimension;
    v.set("podles_span", p.equal);
  }
  if (opt.rieffel) {
    const StructureTable t = twisted_table(inst.c, inst.d, chi);
    const TableComparison cmp = compare_table(t, x.family.family());
    const double assoc = associativity_residual(t), coc = psi_cocycle_residual(chi);
    res["rieffel"] = Json{{"product", rounded(cmp.product)},
                          {"star", rounded(cmp.star)},
                          {"associativity", rounded(assoc)},
                          {"cocycle", rounded(coc)}};
    v.set("rieffel_iso", cmp.matches(tol.eps_eq) && x.family.independent());
    v.set("rieffel_cocycle", assoc < tol.eps_eq && coc < tol.eps_eq);
  }
  if (opt.symmetry) v.set("symmetry", symmetry(x, tol).iso.has_value());

  report["dims"] = dims;
  report["residuals"] = res;
  report["verdicts"] = v.json();
  report["failed"] = v.failed();
  report["iso_found"] = iso_found;
  report["passed"] = v.all();
  return report;
}

Json verify_spec(const ConstructionSpec& spec) {
  Json bich = Json::object();
  bool values_ok = true;
  if (spec.chi_values) {
    std::vector<cd> diag;
    for (const auto& row : *spec.chi_values) diag.insert(diag.end(), row.begin(), row.end());
    const BicharacterEquationReport br =
        verify_bicharacter_equations(build(spec.G, spec.tol), build(spec.H, spec.tol), multiplication(diag));
    bich = Json{{"first_leg", rounded(br.first_leg)}, {"second_leg", rounded(br.second_leg)}};
    values_ok = br.passed(spec.tol.eps_eq) && spec.chi.has_value();
  }
  if (!spec.chi || !values_ok) {
    return Json{{"name", spec.name},
                {"inputs", {{"G", spec.G.cycles()}, {"H", spec.H.cycles()}}},
                {"tolerance", tolerance_json(spec.tol)},
                {"witness", spec.witness},
                {"residuals", {{"bicharacter_equations", bich}}},
                {"verdicts", {{"bicharacter", false}}},
                {"failed", {"bicharacter"}},
                {"iso_found", false},
                {"passed", false}};
  }
  BatteryOptions opt;
  opt.witness = spec.witness;
  opt.covariant = std::find(spec.routes.begin(), spec.routes.end(), "covariant") != spec.routes.end();
  Json r = run_battery(Instance{spec.name, *spec.chi, spec.C, spec.D}, spec.tol, opt);
  if (spec.chi_values) {
    r["residuals"]["bicharacter_equations"] = bich;
    r["verdicts"]["bicharacter"] = true;
  }
  return r;
}

std::vector<Instance> suite_instances(const SuiteOptions& opt) {
  if (opt.max_order < 2) throw std::invalid_argument("suite: max order must be at least 2");
  std::vector<FinAbGroup> pool;
  for (const auto& cyc : std::vector<std::vector<int>>{{2}, {3}, {4}, {2, 2}}) {
    FinAbGroup g(cyc);
    if (g.order() <= opt.max_order) pool.push_back(g);
  }
  std::mt19937_64 rng(opt.seed);
  auto draw = [&](std::size_t n) { return std::size_t(rng() % n); };
  const Tolerance tol;
  const std::vector<std::vector<int>> partitions{{1}, {2}, {1, 1}, {2, 1}, {1, 1, 1}, {2, 2}, {2, 1, 1}};
  auto algebra = [&](const FinAbGroup& g) -> GradedAlgebra {
    switch (draw(3)) {
      case 0:
        return group_algebra(g, tol);
      case 1:
        return function_algebra(g, tol);
      default: {
        const auto& blocks = partitions[draw(partitions.size())];
        int n = 0;
        for (int b : blocks) n += b;
        std::vector<int> labels;
        for (int i = 0; i < n; ++i) labels.push_back(int(draw(std::size_t(g.order()))));
        GradedAlgebra a = matrix_labels(g, labels, blocks, tol);
        std::ostringstream name;
        name << "labels(";
        for (int i = 0; i < n; ++i) name << (i ? "," : "") << labels[std::size_t(i)];
        name << "|";
        for (std::size_t i = 0; i < blocks.size(); ++i) name << (i ? "," : "") << blocks[i];
        name << ")";
        a.name = name.str();
        return a;
      }
    }
  };

  std::vector<Instance> out;
  // anchor: the Z/2 skew case is always covered
  const FinAbGroup z2({2});
  out.push_back({"skew", Bicharacter(z2, z2, {{1}}), group_algebra(z2, tol), group_algebra(z2, tol)});
  while (int(out.size()) < opt.instances) {
    const FinAbGroup g = pool[draw(pool.size())], h = pool[draw(pool.size())];
    const auto all = enumerate_bicharacters(g, h);
    const Bicharacter chi = all[draw(all.size())];
    GradedAlgebra c = algebra(g), d = algebra(h);
    std::ostringstream name;
    name << "i" << out.size() << ":" << group_name(g) << "x" << group_name(h) << ":" << c.name << "," << d.name;
    out.push_back({name.str(), chi, std::move(c), std::move(d)});
  }
  return out;
}

Json run_suite(const SuiteOptions& opt, const Tolerance& tol) {
  const auto instances = suite_instances(opt);
  Json list = Json::array(), repro = Json::array();
  int failed = 0;
  for (std::size_t i = 0; i < instances.size(); ++i) {
    const Instance& inst = instances[i];
    Json r;
    try {
      r = run_battery(inst, tol);
    } catch (const std::exception& e) {
      r = Json{{"name", inst.name}, {"error", e.what()}, {"failed", {"exception"}}, {"passed", false}};
    }
    const bool ok = r["passed"].get<bool>();
    Json row{{"name", inst.name},
             {"G", inst.chi.left().cycles()},
             {"H", inst.chi.right().cycles()},
             {"exponents", inst.chi.exponents()},
             {"dims", r.contains("dims") ? r["dims"] : Json::object()},
             {"failed", r["failed"]},
             {"passed", ok}};
    if (!ok) {
      ++failed;
      if (!opt.repro_dir.empty()) {
        const std::filesystem::path p =
            std::filesystem::path(opt.repro_dir) / ("qtwist-repro-" + std::to_string(opt.seed) + "-" + std::to_string(i) + ".json");
        std::ofstream(p) << spec_to_json(inst.name, inst.chi, inst.c, inst.d, tol).dump(2) << "\n";
        repro.push_back(p.string());
      }
    }
    list.push_back(row);
  }
  return Json{{"name", "suite"},
              {"seed", opt.seed},
              {"max_order", opt.max_order},
              {"tolerance", tolerance_json(tol)},
              {"witness", "canonical"},
              {"instances", list},
              {"total", instances.size()},
              {"failed", failed},
              {"reproducers", repro},
              {"passed", failed == 0}};
}

Json example_skew(const Tolerance& tol) {
  const FinAbGroup z2({2});
  const GradedAlgebra c = group_algebra(z2, tol);
  const SkewTensorResult s = skew_tensor(c, c, tol);
  const CrossedProduct& x = s.product;
  const COperator e = translation(z2, 1);
  const COperator a = x.embed_c(e), b = x.embed_d(e), one = identity(x.ambient);

  // target generators in M₂
  const COperator g1 = multiplication({cd(1), cd(-1)}), g2 = translation(z2, 1), i2 = identity(2);
  std::vector<COperator> fam, img, gv{a, b}, gw{g1, g2};
  for (int p = 0; p < 2; ++p)
    for (int q = 0; q < 2; ++q) {
      fam.push_back(product(p ? a : one, q ? b : one));
      img.push_back(product(p ? g1 : i2, q ? g2 : i2));
    }
  const auto iso = find_generator_isomorphism<cd>(x.algebra, fam, full_matrices(2, tol), img, tol, gv, gw);

  const double anti = distance(product(a, b), COperator(-product(b, a)));
  double sa = 0, un = 0;
  for (const auto* g : {&a, &b}) {
    sa = std::max(sa, distance(*g, adjoint(*g)));
    un = std::max(un, distance(product(*g, *g), one));
  }
  Verdicts v;
  v.set("koszul_table", s.comparison.matches(tol.eps_eq));
  v.set("faithful_representation", s.representation_faithful && s.representation_check.matches(tol.eps_eq));
  v.set("dimension", x.dimension() == 4);
  v.set("center_dim_1", s.center_dim == 1);
  v.set("anticommuting_involutions", anti < tol.eps_eq && sa < tol.eps_eq && un < tol.eps_eq);
  v.set("iso_M2", iso.has_value());
  return Json{{"name", "skew"},
              {"inputs", {{"G", {2}}, {"H", {2}}, {"exponents", {{1}}}, {"C", "C*(Z/2)"}, {"D", "C*(Z/2)"}}},
              {"tolerance", tolerance_json(tol)},
              {"witness", x.provenance},
              {"dims", {{"C", 2}, {"D", 2}, {"product", x.dimension()}, {"center", s.center_dim}}},
              {"residuals",
               {{"koszul_product", rounded(s.comparison.product)},
                {"koszul_star", rounded(s.comparison.star)},
                {"representation", rounded(s.representation_check.product)},
                {"anticommutator", rounded(anti)},
                {"self_adjoint", rounded(sa)},
                {"unitary", rounded(un)},
                {"iso_multiplicativity", iso ? rounded(iso->certificate.multiplicativity) : -1.0}}},
              {"verdicts", v.json()},
              {"generators", {{"g1", dense_json(g1)}, {"g2", dense_json(g2)}}},
              {"structure_constants", triplets_json(s.table)},
              {"table", {{{"product", "C*(Z/2)⊗̂C*(Z/2)"}, {"dim", x.dimension()}, {"center_dim", s.center_dim}}}},
              {"passed", v.all()}};
}

Json example_torus(int n, int k, const Tolerance& tol) {
  const TorusResult t = finite_torus(n, k, tol);
  Verdicts v;
  v.set("dimension", t.dim == Index(n) * n);
  v.set("center", t.center_dim == t.expected_center_dim);
  v.set("relation", t.relation < tol.eps_eq);
  if (t.matrix_iso) v.set("iso_M_N", *t.matrix_iso);
  Json row{{"N", n}, {"k", k}, {"dim", t.dim}, {"center_dim", t.center_dim}, {"expected_center_dim", t.expected_center_dim}};
  return Json{{"name", "torus"},
              {"inputs", {{"N", n}, {"k", k}}},
              {"tolerance", tolerance_json(tol)},
              {"witness", t.product.provenance},
              {"dims", {{"dim", t.dim}, {"center_dim", t.center_dim}, {"expected_center_dim", t.expected_center_dim}}},
              {"residuals", {{"relation", rounded(t.relation)}}},
              {"verdicts", v.json()},
              {"table", {row}},
              {"passed", v.all()}};
}

Json example_crossed(const std::vector<int>& cycles, const Tolerance& tol) {
  const FinAbGroup g(cycles);
  std::vector<std::pair<std::string, GradedAlgebra>> cases{
      {"C*(G)", group_algebra(g, tol)},
      {"trivial", trivially_graded(g, {identity(2)}, tol)},
      {"M2 labels(0,1)", matrix_labels(g, {0, 1}, {}, tol)}};
  Json table = Json::array();
  Verdicts v;
  for (const auto& [label, c] : cases) {
    const ReducedCrossedProduct r = reduced_crossed_product(c, tol);
    const DualCoactionResult dc = dual_coaction(r, tol);
    Json row{{"C", label},
             {"dim_C", c.dimension()},
             {"dim", r.direct.dimension()},
             {"expected", c.dimension() * g.order()},
             {"center_dim", center_dim(r.direct, tol)},
             {"equivalent", r.iso.has_value()},
             {"dual_coaction", dc.grading.passed(tol) && dc.coaction.passed(tol)}};
    v.set(label + ": dimension", r.dimension_law);
    v.set(label + ": equivalent", r.iso.has_value());
    v.set(label + ": dual coaction", dc.grading.passed(tol) && dc.coaction.passed(tol));
    if (label == "C*(G)") {
      const bool m = regular_crossed_product_iso(r, tol).has_value();
      row["iso_M_G"] = m;
      v.set(label + ": iso M_|G|", m);
    }
    table.push_back(row);
  }
  return Json{{"name", "crossed"},
              {"inputs", {{"G", cycles}}},
              {"tolerance", tolerance_json(tol)},
              {"witness", "heisenberg:canonical"},
              {"dims", {{"G", g.order()}}},
              {"verdicts", v.json()},
              {"table", table},
              {"passed", v.all()}};
}

Json example_rieffel(int n, int k, const Tolerance& tol) {
  const FinAbGroup g({n});
  const GradedAlgebra c = group_algebra(g, tol);
  const RieffelResult r = rieffel_twist_compare(c, c, Bicharacter(g, g, {{k}}), tol);
  double roots = 0;
  for (const auto& [a, b, q, val] : r.table.triplets()) roots = std::max(roots, std::abs(std::pow(val, n) - cd(1)));
  Verdicts v;
  v.set("iso", r.iso);
  v.set("associativity", r.associativity < tol.eps_eq);
  v.set("cocycle", r.cocycle < tol.eps_eq);
  v.set("star", r.star < tol.eps_eq);
  v.set("roots_of_unity", roots < 1e-12);
  return Json{{"name", "rieffel"},
              {"inputs", {{"N", n}, {"k", k}}},
              {"tolerance", tolerance_json(tol)},
              {"witness", r.product.provenance},
              {"dims", {{"dim", r.table.dim}, {"product", r.product.dimension()}}},
              {"residuals",
               {{"product", rounded(r.comparison.product)},
                {"star", rounded(r.comparison.star)},
                {"associativity", rounded(r.associativity)},
                {"cocycle", rounded(r.cocycle)},
                {"involution", rounded(r.star)},
                {"roots_of_unity", rounded(roots)}}},
              {"verdicts", v.json()},
              {"structure_constants", triplets_json(r.table)},
              {"table", {{{"N", n}, {"k", k}, {"dim", r.table.dim}, {"iso", r.iso}}}},
              {"passed", v.all()}};
}

Json example_inner(const Tolerance& tol) {
  struct Case {
    std::string label;
    FinAbGroup g, h;
    std::vector<int> c_labels;
    GradedAlgebra d;
    std::optional<std::vector<int>> d_labels;
  };
  const FinAbGroup z2({2}), z3({3}), z4({4});
  auto m = [&](const FinAbGroup& g, Index n) {
    std::vector<COperator> units;
    for (Index i = 0; i < n; ++i)
      for (Index j = 0; j < n; ++j) units.push_back(matrix_unit<cd>(n, n, i, j));
    return trivially_graded(g, units, tol, "M" + std::to_string(n));
  };
  std::vector<Case> cases{
      {"M2 inner ⊠ C*(Z/2)", z2, z2, {0, 1}, group_algebra(z2, tol), std::nullopt},
      {"K(C2) ⊠ K(C2)", z2, z2, {0, 1}, m(z2, 2), std::vector<int>{0, 1}},
      {"M2 inner ⊠ C(Z/3)", z3, z3, {0, 1}, function_algebra(z3, tol), std::nullopt},
      {"M3 inner ⊠ M2 labels", z4, z2, {0, 1, 3}, matrix_labels(z2, {0, 1}, {}, tol), std::nullopt}};
  Json table = Json::array();
  Verdicts v;
  for (const auto& cs : cases) {
    const GradedAlgebra c = m(cs.g, Index(cs.c_labels.size()));
    const COperator u = corepresentation_cocycle(GradedHilbertSpace{cs.g, cs.c_labels});
    std::optional<COperator> vv;
    if (cs.d_labels) vv = corepresentation_cocycle(GradedHilbertSpace{cs.h, *cs.d_labels});
    const auto all = enumerate_bicharacters(cs.g, cs.h);
    const Bicharacter chi = all.size() > 1 ? all[1] : all[0];
    const InnerResult r = inner_coaction_iso(c, u, cs.d, vv, chi, tol);
    const CrossedProduct& y = r.conjugacy.twisted;
    const Index cdim = center_dim(y, tol);
    table.push_back(Json{{"case", cs.label},
                         {"dim", y.dimension()},
                         {"tensor_dim", c.dimension() * cs.d.dimension()},
                         {"center_dim", cdim},
                         {"conjugacy", r.conjugacy.found(tol)},
                         {"iso_tensor", r.found(tol)}});
    v.set(cs.label, r.found(tol));
    if (cs.d_labels) v.set(cs.label + ": M4", y.dimension() == 16 && cdim == 1 && r.found(tol));
  }
  return Json{{"name", "inner"},
              {"inputs", {{"cases", cases.size()}}},
              {"tolerance", tolerance_json(tol)},
              {"witness", "heisenberg:canonical"},
              {"dims", {{"cases", cases.size()}}},
              {"verdicts", v.json()},
              {"table", table},
              {"passed", v.all()}};
}

Json example_modules(const Tolerance& tol) {
  const FinAbGroup z2({2}), z4({4});
  struct Case {
    std::string label;
    GradedHilbertModule e, f;
    Bicharacter chi;
  };
  std::vector<Case> cases{
      {"row module over M2 ⊠ M2", module_from_labels(z2, {0}, {0, 1}, tol), module_from_labels(z2, {0, 1}, {0, 1}, tol),
       Bicharacter(z2, z2, {{1}})},
      {"Z/4 module ⊠ Z/2 row module", module_from_labels(z4, {1, 0}, {0, 3}, tol), module_from_labels(z2, {1}, {0, 1}, tol),
       Bicharacter(z4, z2, {{1}})},
      {"trivial modules", module_from_labels(z2, {0, 1}, {0, 1}, tol), module_from_labels(z2, {1}, {1}, tol),
       Bicharacter(z2, z2, {{1}})}};
  Json table = Json::array();
  Verdicts v;
  for (const auto& cs : cases) {
    const ModuleCheck me = check_module(cs.e, tol), mf = check_module(cs.f, tol);
    const ModuleBoxtimesResult r = module_boxtimes(cs.e, cs.f, cs.chi, tol);
    table.push_back(Json{{"case", cs.label},
                         {"module_dim", r.module_dim},
                         {"compacts_dim", r.compacts.dimension()},
                         {"coefficients_dim", r.coefficients.dimension()},
                         {"K_E_dim", cs.e.compacts.size()},
                         {"right_action", rounded(r.right_action)},
                         {"inner_product", rounded(r.inner_product)},
                         {"compact_iso", r.compact_iso.has_value()},
                         {"exchange", r.exchange}});
    v.set(cs.label, me.passed(tol) && mf.passed(tol) && r.passed(tol) && r.inner_span);
  }
  const CompositionResult comp =
      composition_check(z2, {{0}, {1, 0}, {1}}, z2, {{1}, {0, 1}, {0}}, Bicharacter(z2, z2, {{1}}), tol);
  table.push_back(Json{{"case", "composition"}, {"module_dim", comp.dim}, {"expected", comp.expected_dim}, {"equal", comp.equal}});
  v.set("composition", comp.equal && comp.dim == comp.expected_dim);
  return Json{{"name", "modules"},
              {"inputs", {{"cases", cases.size() + 1}}},
              {"tolerance", tolerance_json(tol)},
              {"witness", "heisenberg:canonical"},
              {"dims", {{"cases", cases.size() + 1}}},
              {"verdicts", v.json()},
              {"table", table},
              {"passed", v.all()}};
}

std::string example_csv(const Json& report) {
  if (!report.contains("table") || !report["table"].is_array() || report["table"].empty())
    return report_to_csv(report.value("dims", Json::object()));
  std::vector<std::string> keys;
  for (const auto& row : report["table"])
    for (auto it = row.begin(); it != row.end(); ++it)
      if (std::find(keys.begin(), keys.end(), it.key()) == keys.end()) keys.push_back(it.key());
  std::ostringstream out;
  for (std::size_t i = 0; i < keys.size(); ++i) out << (i ? "," : "") << keys[i];
  out << "\n";
  for (const auto& row : report["table"]) {
    for (std::size_t i = 0; i < keys.size(); ++i) {
      if (i) out << ",";
      if (!row.contains(keys[i])) continue;
      const Json& x = row[keys[i]];
      out << (x.is_string() ? "\"" + x.get<std::string>() + "\"" : x.dump());
    }
    out << "\n";
  }
  return out.str();
}

}  // namespace qtwist
