#pragma once

// Named replay suites run by `gospace verify <suite>`. Each suite is a list of
// pass/fail items; the report is deterministic for fixed options.

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace gospace {

struct SuiteOptions {
  int samples = 200;
  std::uint64_t seed = 42;
  double tol = 1e-8;
};

struct SuiteItem {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct SuiteReport {
  std::string suite;
  std::vector<SuiteItem> items;
  bool passed() const;
};

/// thm1-converse, thm2-wallach, cor-wallach-normal, type1-nr, crossval, invariants.
const std::vector<std::string>& suite_names();

/// Error: UnknownSpec for an unknown suite name.
SuiteReport run_suite(std::string_view name, const SuiteOptions& options);

/// Default metric battery for s summands: equal linear, two unequal linear,
/// and the non-Riemannian members (phi profiles for s = 2, a perturbed
/// linear metric for s = 3).
std::vector<std::string> default_battery(std::size_t s);

}  // namespace gospace
