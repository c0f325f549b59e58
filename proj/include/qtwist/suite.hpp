#pragma once

// Check batteries behind the command line: full verification of one
// construction, the seeded randomized suite, and the example presets.

#include "qtwist/apps.hpp"
#include "qtwist/io.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace qtwist {

struct Instance {
  std::string name;
  Bicharacter chi;
  GradedAlgebra c;
  GradedAlgebra d;
};

struct BatteryOptions {
  std::string witness = "canonical";
  bool covariant = true;
  bool witnesses = true;   // compare canonical, composite and amplified pairs
  bool rieffel = true;
  bool podles = true;
  bool symmetry = true;
};

/// Runs every check on one instance.  The report carries "passed".
Json run_battery(const Instance& inst, const Tolerance& tol, const BatteryOptions& opt = {});

/// Battery for a parsed spec, including the bicharacter equations when χ is
/// given as a values table.
Json verify_spec(const ConstructionSpec& spec);

struct SuiteOptions {
  std::uint64_t seed = 20240601;
  int max_order = 4;
  int instances = 24;
  std::string repro_dir = ".";  // empty: do not write reproducers
};

/// Deterministic instances for a seed: groups of order ≤ max_order, χ drawn
/// from all bicharacters, gradings of carrier ≤ 4 and dimension ≤ 8.
std::vector<Instance> suite_instances(const SuiteOptions& opt);
Json run_suite(const SuiteOptions& opt, const Tolerance& tol = {});

Json example_skew(const Tolerance& tol = {});
Json example_torus(int n, int k, const Tolerance& tol = {});
Json example_crossed(const std::vector<int>& cycles, const Tolerance& tol = {});
Json example_rieffel(int n, int k, const Tolerance& tol = {});
Json example_inner(const Tolerance& tol = {});
Json example_modules(const Tolerance& tol = {});

/// Rows for `--emit csv` of an example: dimension and centre tables.
std::string example_csv(const Json& report);

}  // namespace qtwist
