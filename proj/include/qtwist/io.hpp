#pragma once

// JSON construction specs, matrix encoding and report flattening.
// Complex numbers are [re, im] pairs; a matrix is either a list of rows or
// {"dim": n, "entries": [[i, j, re, im], ...]}.

#include "qtwist/abgroup.hpp"
#include "qtwist/coact.hpp"
#include "qtwist/matspan.hpp"

#include <nlohmann/json.hpp>

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace qtwist {

using Json = nlohmann::ordered_json;

/// A malformed spec: `where` is "file:line:col" for syntax errors and
/// "file: /json/pointer" for schema errors.
class SpecError : public std::runtime_error {
 public:
  SpecError(const std::string& where, const std::string& what)
      : std::runtime_error(where + ": " + what), where_(where) {}
  const std::string& where() const { return where_; }

 private:
  std::string where_;
};

struct ConstructionSpec {
  std::string name;
  FinAbGroup G;
  FinAbGroup H;
  /// Exponent form of χ.  Empty when the given values table matches no bicharacter.
  std::optional<Bicharacter> chi;
  /// χ(g, h) by element indices when given as a values table.
  std::optional<std::vector<std::vector<cd>>> chi_values;
  GradedAlgebra C;
  GradedAlgebra D;
  Tolerance tol;
  std::string witness = "canonical";  // canonical | composite | amplified
  std::vector<std::string> routes{"heisenberg", "covariant"};
};

ConstructionSpec parse_spec(const std::string& text, const std::string& source = "<spec>");
ConstructionSpec load_spec(const std::string& path);

Json complex_to_json(cd z);
Json matrix_to_json(const COperator& x);
COperator matrix_from_json(const Json& j, const std::string& where = "");

Json group_to_json(const FinAbGroup& g);
/// Explicit "matrix" form: carrier and homogeneous basis grouped by degree.
Json algebra_to_json(const GradedAlgebra& a);
Json spec_to_json(const std::string& name, const Bicharacter& chi, const GradedAlgebra& c, const GradedAlgebra& d,
                  const Tolerance& tol, const std::string& witness = "canonical");

/// Flattens scalar leaves to "path,value" rows with a header line.
std::string report_to_csv(const Json& report);

}  // namespace qtwist
