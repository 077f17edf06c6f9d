#pragma once

// Command-line driver. `run_cli` is the whole program; tools/gospace.cpp only
// forwards argv to it, so tests can call it in-process.
//
// Exit codes:
//   0  success (or verdict matched --expect)
//   1  verdict did not match --expect, or a verify suite had failing items
//   2  INCONCLUSIVE g.o. verdict
//   3  metric rejected (InvalidProfile, NotStronglyConvex, NonPositiveCoefficient)
//   4  bad command line, space/metric spec or suite name
//   5  any other error

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gospace/catalog.hpp"
#include "gospace/gocheck.hpp"
#include "gospace/suites.hpp"

namespace gospace {

inline constexpr int kExitOk = 0;
inline constexpr int kExitMismatch = 1;
inline constexpr int kExitInconclusive = 2;
inline constexpr int kExitMetricRejected = 3;
inline constexpr int kExitUsage = 4;
inline constexpr int kExitInternal = 5;

inline constexpr int kSchemaVersion = 1;

enum class Format { Json, Csv, Text };

std::optional<Format> parse_format(std::string_view s);

/// Everything a `check` report contains.
struct CheckRun {
  SpaceInfo info;
  std::vector<Eigen::Index> dims;
  Eigen::Index dim_g = 0;
  Eigen::Index dim_h = 0;
  std::string metric;
  LKind metric_kind = LKind::Linear;
  int samples = 0;
  std::uint64_t seed = 0;
  double tol = 0.0;
  CheckReport go;
  CheckReport nr;
  double wallclock = 0.0;  // seconds
};

std::string render_check(const CheckRun& run, Format format);
std::string render_suite(const SuiteReport& report, const SuiteOptions& options, double wallclock, Format format);
std::string render_list(const std::vector<CatalogEntry>& entries, Format format);

/// Default tolerance: GOSPACE_TOL when set and parseable, else 1e-8.
double default_tolerance();

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace gospace
