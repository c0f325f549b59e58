#include "qtwist/io.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>

namespace qtwist {

namespace {

struct Ctx {
  std::string source;
  [[noreturn]] void fail(const std::string& path, const std::string& what) const {
    throw SpecError(source + ": " + (path.empty() ? "/" : path), what);
  }
};

const Json& field(const Ctx& ctx, const Json& j, const std::string& path, const char* key) {
  if (!j.is_object()) ctx.fail(path, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) ctx.fail(path, std::string("missing field \"") + key + "\"");
  return *it;
}

int as_int(const Ctx& ctx, const Json& j, const std::string& path) {
  if (!j.is_number_integer()) ctx.fail(path, "expected an integer");
  return j.get<int>();
}

double as_double(const Ctx& ctx, const Json& j, const std::string& path) {
  if (!j.is_number()) ctx.fail(path, "expected a number");
  return j.get<double>();
}

std::vector<int> int_list(const Ctx& ctx, const Json& j, const std::string& path) {
  if (!j.is_array()) ctx.fail(path, "expected an array of integers");
  std::vector<int> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(as_int(ctx, j[i], path + "/" + std::to_string(i)));
  return out;
}

cd as_complex(const Ctx& ctx, const Json& j, const std::string& path) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
    return {j[0].get<double>(), j[1].get<double>()};
  ctx.fail(path, "expected a number or an [re, im] pair");
}

FinAbGroup parse_group(const Ctx& ctx, const Json& j, const std::string& path) {
  const Json& c = j.is_object() ? field(ctx, j, path, "cycles") : j;
  const std::string p = j.is_object() ? path + "/cycles" : path;
  const auto cycles = int_list(ctx, c, p);
  if (cycles.empty()) ctx.fail(p, "a group needs at least one cycle");
  for (std::size_t i = 0; i < cycles.size(); ++i)
    if (cycles[i] < 2 || cycles[i] > 64) ctx.fail(p + "/" + std::to_string(i), "cycle orders must lie in 2..64");
  return FinAbGroup(cycles);
}

int parse_element(const Ctx& ctx, const FinAbGroup& g, const Json& j, const std::string& path) {
  if (j.is_number_integer()) {
    const int e = j.get<int>();
    if (e < 0 || e >= g.order()) ctx.fail(path, "element index outside the group");
    return e;
  }
  const auto a = int_list(ctx, j, path);
  if (!g.contains(a)) ctx.fail(path, "element coordinates do not match the group");
  return g.index(a);
}

COperator parse_matrix(const Ctx& ctx, const Json& j, const std::string& path) {
  std::vector<Eigen::Triplet<cd>> t;
  Index n = 0;
  if (j.is_object()) {
    n = as_int(ctx, field(ctx, j, path, "dim"), path + "/dim");
    if (n < 1) ctx.fail(path + "/dim", "dimension must be positive");
    const Json& entries = field(ctx, j, path, "entries");
    if (!entries.is_array()) ctx.fail(path + "/entries", "expected an array of [i, j, re, im]");
    for (std::size_t k = 0; k < entries.size(); ++k) {
      const std::string p = path + "/entries/" + std::to_string(k);
      const Json& e = entries[k];
      if (!e.is_array() || (e.size() != 3 && e.size() != 4)) ctx.fail(p, "expected [i, j, re, im] or [i, j, [re, im]]");
      const int r = as_int(ctx, e[0], p + "/0"), c = as_int(ctx, e[1], p + "/1");
      if (r < 0 || r >= n || c < 0 || c >= n) ctx.fail(p, "entry outside the matrix");
      const cd z = e.size() == 4 ? cd(as_double(ctx, e[2], p + "/2"), as_double(ctx, e[3], p + "/3"))
                                 : as_complex(ctx, e[2], p + "/2");
      t.emplace_back(r, c, z);
    }
  } else if (j.is_array()) {
    n = Index(j.size());
    if (n == 0) ctx.fail(path, "empty matrix");
    for (Index r = 0; r < n; ++r) {
      const std::string p = path + "/" + std::to_string(r);
      const Json& row = j[std::size_t(r)];
      if (!row.is_array() || Index(row.size()) != n) ctx.fail(p, "matrix rows must form a square array");
      for (Index c = 0; c < n; ++c) {
        const cd z = as_complex(ctx, row[std::size_t(c)], p + "/" + std::to_string(c));
        if (z != cd(0)) t.emplace_back(r, c, z);
      }
    }
  } else {
    ctx.fail(path, "expected a matrix (rows or {dim, entries})");
  }
  COperator x(n, n);
  x.setFromTriplets(t.begin(), t.end());
  if (!all_finite(x)) ctx.fail(path, "non-finite matrix entry");
  return pruned(x);
}

GradedAlgebra parse_algebra(const Ctx& ctx, const FinAbGroup& g, const Json& j, const std::string& path,
                            const Tolerance& tol) {
  const Json& kind_j = field(ctx, j, path, "kind");
  if (!kind_j.is_string()) ctx.fail(path + "/kind", "expected a string");
  const std::string kind = kind_j.get<std::string>();
  GradedAlgebra a;
  try {
    if (kind == "group_algebra") {
      a = group_algebra(g, tol);
    } else if (kind == "function_algebra") {
      a = function_algebra(g, tol);
    } else if (kind == "labels") {
      const auto labels = int_list(ctx, field(ctx, j, path, "labels"), path + "/labels");
      for (std::size_t i = 0; i < labels.size(); ++i)
        if (labels[i] < 0 || labels[i] >= g.order()) ctx.fail(path + "/labels/" + std::to_string(i), "label outside the group");
      std::vector<int> blocks;
      if (j.contains("blocks")) blocks = int_list(ctx, j["blocks"], path + "/blocks");
      a = matrix_labels(g, labels, blocks, tol);
    } else if (kind == "matrix") {
      const Index n = as_int(ctx, field(ctx, j, path, "dim"), path + "/dim");
      if (n < 1) ctx.fail(path + "/dim", "dimension must be positive");
      const Json& comps = field(ctx, j, path, "components");
      if (!comps.is_array() || comps.empty()) ctx.fail(path + "/components", "expected a non-empty array");
      DegreePieces pieces;
      for (std::size_t k = 0; k < comps.size(); ++k) {
        const std::string p = path + "/components/" + std::to_string(k);
        const int deg = parse_element(ctx, g, field(ctx, comps[k], p, "degree"), p + "/degree");
        const Json& els = field(ctx, comps[k], p, "elements");
        if (!els.is_array()) ctx.fail(p + "/elements", "expected an array of matrices");
        std::vector<COperator> xs;
        for (std::size_t e = 0; e < els.size(); ++e) {
          const std::string pe = p + "/elements/" + std::to_string(e);
          xs.push_back(parse_matrix(ctx, els[e], pe));
          if (xs.back().rows() != n) ctx.fail(pe, "matrix size differs from dim");
        }
        pieces.push_back({deg, std::move(xs)});
      }
      a = make_graded(g, n, pieces, tol, j.value("name", std::string("matrix")));
    } else {
      ctx.fail(path + "/kind", "unknown algebra kind \"" + kind + "\"");
    }
    if (j.contains("cocycle")) {
      const COperator u = parse_matrix(ctx, j["cocycle"], path + "/cocycle");
      if (u.rows() != a.carrier * g.order()) ctx.fail(path + "/cocycle", "cocycle must act on carrier ⊗ ℓ²(G)");
      a = twist_by_cocycle(a, u, tol);
    }
  } catch (const std::invalid_argument& e) {
    ctx.fail(path, e.what());
  }
  return a;
}

std::string line_col(const std::string& text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i + 1 < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return std::to_string(line) + ":" + std::to_string(col);
}

void flatten(const Json& j, const std::string& path, std::vector<std::pair<std::string, std::string>>& rows) {
  if (j.is_object()) {
    for (auto it = j.begin(); it != j.end(); ++it) flatten(it.value(), path.empty() ? it.key() : path + "." + it.key(), rows);
  } else if (j.is_array()) {
    for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], path + "." + std::to_string(i), rows);
  } else if (j.is_string()) {
    rows.push_back({path, j.get<std::string>()});
  } else {
    rows.push_back({path, j.dump()});
  }
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

ConstructionSpec parse_spec(const std::string& text, const std::string& source) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    std::string what = e.what();
    if (auto pos = what.find("parse error"); pos != std::string::npos) what = what.substr(pos);
    throw SpecError(source + ":" + line_col(text, e.byte), what);
  }
  const Ctx ctx{source};
  if (!j.is_object()) ctx.fail("", "spec must be a JSON object");

  ConstructionSpec s;
  s.name = j.value("name", std::string("spec"));
  if (j.contains("options")) {
    const Json& o = j["options"];
    if (!o.is_object()) ctx.fail("/options", "expected an object");
    if (o.contains("tolerance")) {
      const Json& t = o["tolerance"];
      if (t.is_number()) {
        s.tol.eps_eq = t.get<double>();
      } else if (t.is_object()) {
        if (t.contains("eps_rank")) s.tol.eps_rank = as_double(ctx, t["eps_rank"], "/options/tolerance/eps_rank");
        if (t.contains("eps_eq")) s.tol.eps_eq = as_double(ctx, t["eps_eq"], "/options/tolerance/eps_eq");
      } else {
        ctx.fail("/options/tolerance", "expected a number or {eps_rank, eps_eq}");
      }
      try {
        s.tol.validate();
      } catch (const std::invalid_argument& e) {
        ctx.fail("/options/tolerance", e.what());
      }
    }
    if (o.contains("witness")) {
      if (!o["witness"].is_string()) ctx.fail("/options/witness", "expected a string");
      s.witness = o["witness"].get<std::string>();
      if (s.witness != "canonical" && s.witness != "composite" && s.witness != "amplified")
        ctx.fail("/options/witness", "witness must be canonical, composite or amplified");
    }
    if (o.contains("routes")) {
      s.routes.clear();
      const Json& r = o["routes"];
      if (!r.is_array()) ctx.fail("/options/routes", "expected an array");
      for (std::size_t i = 0; i < r.size(); ++i) {
        const std::string p = "/options/routes/" + std::to_string(i);
        if (!r[i].is_string()) ctx.fail(p, "expected a string");
        const std::string route = r[i].get<std::string>();
        if (route != "heisenberg" && route != "covariant") ctx.fail(p, "route must be heisenberg or covariant");
        s.routes.push_back(route);
      }
    }
  }

  s.G = parse_group(ctx, field(ctx, j, "", "G"), "/G");
  s.H = parse_group(ctx, field(ctx, j, "", "H"), "/H");

  const Json& b = field(ctx, j, "", "bicharacter");
  if (b.contains("exponents")) {
    const Json& e = b["exponents"];
    if (!e.is_array() || int(e.size()) != s.G.rank()) ctx.fail("/bicharacter/exponents", "expected rank(G) rows");
    std::vector<std::vector<int>> m;
    for (std::size_t i = 0; i < e.size(); ++i) {
      const std::string p = "/bicharacter/exponents/" + std::to_string(i);
      m.push_back(int_list(ctx, e[i], p));
      if (int(m.back().size()) != s.H.rank()) ctx.fail(p, "expected rank(H) entries");
    }
    s.chi = Bicharacter(s.G, s.H, m);
  } else if (b.contains("values")) {
    const Json& v = b["values"];
    if (!v.is_array() || int(v.size()) != s.G.order()) ctx.fail("/bicharacter/values", "expected |G| rows");
    std::vector<std::vector<cd>> table;
    for (std::size_t i = 0; i < v.size(); ++i) {
      const std::string p = "/bicharacter/values/" + std::to_string(i);
      if (!v[i].is_array() || int(v[i].size()) != s.H.order()) ctx.fail(p, "expected |H| entries");
      std::vector<cd> row;
      for (std::size_t k = 0; k < v[i].size(); ++k) row.push_back(as_complex(ctx, v[i][k], p + "/" + std::to_string(k)));
      table.push_back(std::move(row));
    }
    s.chi_values = table;
    for (const auto& cand : enumerate_bicharacters(s.G, s.H)) {
      double worst = 0;
      for (int g = 0; g < s.G.order(); ++g)
        for (int h = 0; h < s.H.order(); ++h)
          worst = std::max(worst, std::abs(cand.evaluate_index(g, h) - table[std::size_t(g)][std::size_t(h)]));
      if (worst < s.tol.eps_eq) {
        s.chi = cand;
        break;
      }
    }
  } else {
    ctx.fail("/bicharacter", "expected \"exponents\" or \"values\"");
  }

  s.C = parse_algebra(ctx, s.G, field(ctx, j, "", "C"), "/C", s.tol);
  s.D = parse_algebra(ctx, s.H, field(ctx, j, "", "D"), "/D", s.tol);
  return s;
}

ConstructionSpec load_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SpecError(path, "cannot open file");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_spec(buf.str(), path);
}

Json complex_to_json(cd z) {
  // clean signed zeros so reports are stable
  auto clean = [](double x) { return std::abs(x) < 1e-15 ? 0.0 : x; };
  return Json::array({clean(z.real()), clean(z.imag())});
}

Json matrix_to_json(const COperator& x) {
  Json entries = Json::array();
  const COperator p = pruned(x);
  std::vector<std::tuple<Index, Index, cd>> t;
  for (Index c = 0; c < p.outerSize(); ++c)
    for (COperator::InnerIterator it(p, c); it; ++it) t.emplace_back(it.row(), c, it.value());
  std::sort(t.begin(), t.end(), [](const auto& a, const auto& b) {
    return std::tie(std::get<0>(a), std::get<1>(a)) < std::tie(std::get<0>(b), std::get<1>(b));
  });
  for (const auto& [r, c, z] : t) {
    const Json zz = complex_to_json(z);
    entries.push_back(Json::array({r, c, zz[0], zz[1]}));
  }
  return Json{{"dim", x.rows()}, {"entries", entries}};
}

COperator matrix_from_json(const Json& j, const std::string& where) { return parse_matrix(Ctx{where}, j, ""); }

Json group_to_json(const FinAbGroup& g) { return Json{{"cycles", g.cycles()}}; }

Json algebra_to_json(const GradedAlgebra& a) {
  Json comps = Json::array();
  for (int g = 0; g < a.group.order(); ++g) {
    Json els = Json::array();
    for (Index k = 0; k < a.dimension(); ++k)
      if (a.degree[std::size_t(k)] == g) els.push_back(matrix_to_json(a.basis[std::size_t(k)]));
    if (!els.empty()) comps.push_back(Json{{"degree", a.group.element(g)}, {"elements", els}});
  }
  return Json{{"kind", "matrix"}, {"name", a.name}, {"dim", a.carrier}, {"components", comps}};
}

Json spec_to_json(const std::string& name, const Bicharacter& chi, const GradedAlgebra& c, const GradedAlgebra& d,
                  const Tolerance& tol, const std::string& witness) {
  return Json{{"name", name},
              {"G", group_to_json(chi.left())},
              {"H", group_to_json(chi.right())},
              {"bicharacter", {{"exponents", chi.exponents()}}},
              {"C", algebra_to_json(c)},
              {"D", algebra_to_json(d)},
              {"options", {{"tolerance", {{"eps_rank", tol.eps_rank}, {"eps_eq", tol.eps_eq}}}, {"witness", witness}}}};
}

std::string report_to_csv(const Json& report) {
  std::vector<std::pair<std::string, std::string>> rows;
  flatten(report, "", rows);
  std::ostringstream out;
  out << "key,value\n";
  for (const auto& [k, v] : rows) out << csv_field(k) << "," << csv_field(v) << "\n";
  return out.str();
}

}  // namespace qtwist
