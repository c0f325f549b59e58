// qtwist: verify construction specs, run example presets and the randomized suite.
// Exit codes: 0 all checks pass, 1 a check fails, 2 usage or parse error.

#include "qtwist/io.hpp"
#include "qtwist/suite.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <optional>
#include <string>
#include <vector>

namespace {

using qtwist::Json;

constexpr int kPass = 0, kFail = 1, kUsage = 2;

int emit(const Json& report, const std::string& format, bool example) {
  if (format == "csv")
    std::cout << (example ? qtwist::example_csv(report) : qtwist::report_to_csv(report));
  else
    std::cout << report.dump(2) << "\n";
  return report.value("passed", false) ? kPass : kFail;
}

Json torus_sweep(const qtwist::Tolerance& tol) {
  Json table = Json::array(), verdicts = Json::object();
  bool ok = true;
  for (int n = 2; n <= 6; ++n)
    for (int k = 0; k < n; ++k) {
      const Json r = qtwist::example_torus(n, k, tol);
      table.push_back(r["table"][0]);
      verdicts["N=" + std::to_string(n) + ",k=" + std::to_string(k)] = r["passed"];
      ok = ok && r["passed"].get<bool>();
    }
  return Json{{"name", "torus"},
              {"inputs", {{"N", "2..6"}, {"k", "0..N-1"}}},
              {"tolerance", {{"eps_rank", tol.eps_rank}, {"eps_eq", tol.eps_eq}}},
              {"witness", "heisenberg:canonical"},
              {"verdicts", verdicts},
              {"table", table},
              {"passed", ok}};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Twisted tensor products of finite graded C*-algebras"};
  app.require_subcommand(1);

  std::string spec_path, emit_format = "json";
  std::optional<double> tolerance;
  auto* verify = app.add_subcommand("verify", "Run the full check battery on a construction spec");
  verify->add_option("spec", spec_path, "Spec JSON file")->required();
  verify->add_option("--tolerance", tolerance, "Equality tolerance (eps_eq)")->check(CLI::PositiveNumber);
  verify->add_option("--emit", emit_format, "Output format")->check(CLI::IsMember({"json", "csv"}));

  std::string preset;
  std::optional<int> n, k;
  std::vector<int> cycles{3};
  auto* example = app.add_subcommand("example", "Run a preset: skew, torus, crossed, rieffel, inner, modules");
  example->add_option("name", preset, "Preset name")->required();
  example->add_option("--n", n, "Torus size N");
  example->add_option("--k", k, "Torus twist k");
  example->add_option("--cycles", cycles, "Group for the crossed preset")->delimiter(',');
  example->add_option("--emit", emit_format, "Output format")->check(CLI::IsMember({"json", "csv"}));

  qtwist::SuiteOptions suite_opt;
  auto* suite = app.add_subcommand("suite", "Run the seeded randomized property suite");
  suite->add_option("--seed", suite_opt.seed, "PRNG seed");
  suite->add_option("--max-order", suite_opt.max_order, "Largest group order")->check(CLI::Range(2, 4));
  suite->add_option("--instances", suite_opt.instances, "Number of instances")->check(CLI::Range(1, 1000));
  suite->add_option("--repro-dir", suite_opt.repro_dir, "Where failing instances are written");
  suite->add_option("--emit", emit_format, "Output format")->check(CLI::IsMember({"json", "csv"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kPass : kUsage;
  }

  try {
    if (*verify) {
      qtwist::ConstructionSpec spec = qtwist::load_spec(spec_path);
      if (tolerance) spec.tol.eps_eq = *tolerance;
      Json r;
      try {
        r = qtwist::verify_spec(spec);
      } catch (const std::exception& e) {
        // a construction step refused its input: a failed check, not a usage error
        r = Json{{"name", spec.name}, {"error", e.what()}, {"iso_found", false}, {"passed", false}};
      }
      return emit(r, emit_format, false);
    }
    if (*example) {
      const qtwist::Tolerance tol;
      Json r;
      if (preset == "skew") {
        r = qtwist::example_skew(tol);
      } else if (preset == "torus") {
        if (n.has_value() != k.has_value()) {
          std::cerr << "torus: give both --n and --k, or neither for the full sweep\n";
          return kUsage;
        }
        if (n && (*n < 2 || *k < 0 || *k >= *n)) {
          std::cerr << "torus: need N >= 2 and 0 <= k < N\n";
          return kUsage;
        }
        r = n ? qtwist::example_torus(*n, *k, tol) : torus_sweep(tol);
      } else if (preset == "crossed") {
        r = qtwist::example_crossed(cycles, tol);
      } else if (preset == "rieffel") {
        const int nn = n.value_or(3), kk = k.value_or(1);
        if (nn < 2 || kk < 0 || kk >= nn) {
          std::cerr << "rieffel: need N >= 2 and 0 <= k < N\n";
          return kUsage;
        }
        r = qtwist::example_rieffel(nn, kk, tol);
      } else if (preset == "inner") {
        r = qtwist::example_inner(tol);
      } else if (preset == "modules") {
        r = qtwist::example_modules(tol);
      } else {
        std::cerr << "unknown preset \"" << preset << "\" (skew, torus, crossed, rieffel, inner, modules)\n";
        return kUsage;
      }
      return emit(r, emit_format, true);
    }
    if (*suite) return emit(qtwist::run_suite(suite_opt), emit_format, false);
  } catch (const qtwist::SpecError& e) {
    std::cerr << e.what() << "\n";
    return kUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
