#include "qtwist/io.hpp"
#include "qtwist/suite.hpp"

#include <gtest/gtest.h>

using namespace qtwist;

namespace {

const char* kM2 = R"({
  "name": "m2",
  "G": {"cycles": [2]},
  "H": {"cycles": [2]},
  "bicharacter": {"exponents": [[1]]},
  "C": {"kind": "group_algebra"},
  "D": {"kind": "group_algebra"}
})";

std::string with_bicharacter(const std::string& b) {
  return R"({"G": {"cycles": [2]}, "H": {"cycles": [2]}, "bicharacter": )" + b +
         R"(, "C": {"kind": "group_algebra"}, "D": {"kind": "function_algebra"}})";
}

std::string error_of(const std::string& text) {
  try {
    parse_spec(text, "t.json");
  } catch (const SpecError& e) {
    return e.where();
  }
  return "";
}

}  // namespace

TEST(Io, ParsesMinimalSpec) {
  const ConstructionSpec s = parse_spec(kM2, "m2.json");
  EXPECT_EQ(s.name, "m2");
  EXPECT_EQ(s.G.cycles(), std::vector<int>{2});
  ASSERT_TRUE(s.chi.has_value());
  EXPECT_EQ(s.chi->exponents(), (std::vector<std::vector<int>>{{1}}));
  EXPECT_EQ(s.C.dimension(), 2);
  EXPECT_EQ(s.witness, "canonical");
}

TEST(Io, SyntaxErrorsCarryLineAndColumn) {
  const std::string text = "{\n  \"G\": {\"cycles\": [2]}\n  \"H\": 1\n}";
  // the offending token "H" spans columns 3..5 of line 3
  const std::string where = error_of(text);
  ASSERT_EQ(where.rfind("t.json:3:", 0), 0u) << where;
  const int col = std::stoi(where.substr(9));
  EXPECT_GE(col, 3);
  EXPECT_LE(col, 5);
}

TEST(Io, SchemaErrorsCarryJsonPointer) {
  EXPECT_EQ(error_of(R"({"G": {"cycles": [2]}})"), "t.json: /");
  std::string bad_cycle = kM2;
  bad_cycle.replace(bad_cycle.find("[2]"), 3, "[1]");
  EXPECT_EQ(error_of(bad_cycle), "t.json: /G/cycles/0");
  std::string bad_kind = kM2;
  bad_kind.replace(bad_kind.find("\"group_algebra\""), 15, "\"nonsense\"");
  EXPECT_EQ(error_of(bad_kind), "t.json: /C/kind");
}

TEST(Io, ValuesTableMatchesEnumeratedBicharacter) {
  const ConstructionSpec s = parse_spec(with_bicharacter(R"({"values": [[1, 1], [1, -1]]})"));
  ASSERT_TRUE(s.chi.has_value());
  EXPECT_EQ(s.chi->exponents()[0][0], 1);
  ASSERT_TRUE(s.chi_values.has_value());
  const ConstructionSpec bad = parse_spec(with_bicharacter(R"({"values": [[1, 1], [1, [-0.99, 0.1]]]})"));
  EXPECT_FALSE(bad.chi.has_value());
}

TEST(Io, MatrixRoundTrip) {
  COperator x(3, 3);
  x.insert(0, 2) = cd(1.5, -2);
  x.insert(2, 1) = cd(0, 1);
  const Json j = matrix_to_json(x);
  EXPECT_EQ(j["dim"], 3);
  EXPECT_LT(distance(matrix_from_json(j), x), 1e-15);
  const Json rows = Json::parse(R"([[0, [0, 1]], [2, 0]])");
  const COperator y = matrix_from_json(rows);
  EXPECT_EQ(y.coeff(0, 1), cd(0, 1));
  EXPECT_EQ(y.coeff(1, 0), cd(2));
  EXPECT_THROW(matrix_from_json(Json::parse("[[1, 2], [3]]")), SpecError);
}

TEST(Io, SpecRoundTripPreservesGrading) {
  const Tolerance tol;
  const FinAbGroup z4({4}), z2({2});
  const GradedAlgebra c = matrix_labels(z4, {0, 1, 3}, {2, 1}, tol), d = function_algebra(z2, tol);
  const Json j = spec_to_json("rt", Bicharacter(z4, z2, {{1}}), c, d, tol, "amplified");
  const ConstructionSpec s = parse_spec(j.dump());
  EXPECT_EQ(s.witness, "amplified");
  EXPECT_EQ(s.chi->exponents(), (std::vector<std::vector<int>>{{1}}));
  ASSERT_EQ(s.C.dimension(), c.dimension());
  for (int g = 0; g < z4.order(); ++g)
    EXPECT_TRUE(subspace_equal(s.C.components[std::size_t(g)], c.components[std::size_t(g)], tol));
  for (int g = 0; g < z2.order(); ++g)
    EXPECT_TRUE(subspace_equal(s.D.components[std::size_t(g)], d.components[std::size_t(g)], tol));
}

TEST(Io, CsvFlattening) {
  const Json r = Json::parse(R"({"name": "x,y", "dims": {"C": 2}, "list": [true, 1.5]})");
  EXPECT_EQ(report_to_csv(r), "key,value\nname,\"x,y\"\ndims.C,2\nlist.0,true\nlist.1,1.5\n");
}

TEST(Io, VerifyReportsIsomorphism) {
  const Json r = verify_spec(parse_spec(kM2));
  EXPECT_TRUE(r["passed"].get<bool>());
  EXPECT_TRUE(r["iso_found"].get<bool>());
  EXPECT_EQ(r["dims"]["boxtimes"], 4);
}

TEST(Io, VerifyFailsOnPerturbedValues) {
  const Json r = verify_spec(parse_spec(with_bicharacter(R"({"values": [[1, 1], [1, [-0.99, 0.1]]]})")));
  EXPECT_FALSE(r["passed"].get<bool>());
  EXPECT_GT(r["residuals"]["bicharacter_equations"]["first_leg"].get<double>(), 1e-3);
}

TEST(Io, SuiteIsDeterministic) {
  SuiteOptions o;
  o.instances = 6;
  o.repro_dir = "";
  const Json a = run_suite(o), b = run_suite(o);
  EXPECT_EQ(a.dump(), b.dump());
  EXPECT_TRUE(a["passed"].get<bool>());
  o.seed = 7;
  EXPECT_NE(run_suite(o)["instances"].dump(), a["instances"].dump());
}

TEST(Io, SuiteRespectsMaxOrder) {
  SuiteOptions o;
  o.max_order = 2;
  o.instances = 8;
  for (const Instance& i : suite_instances(o)) {
    EXPECT_LE(i.chi.left().order(), 2);
    EXPECT_LE(i.chi.right().order(), 2);
  }
  EXPECT_EQ(suite_instances(o).front().name, "skew");
}
