#pragma once

// Named homogeneous spaces with their canonical splittings of m.
//
// Spec grammar:  <family>/<params>  where params is a comma-separated list
// of integers ("wallach-so/2,2,2"), or one of the short aliases listed by
// list_catalog() ("so5/u2", "su3/t2", "ledger-obata/su2", ...).

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gospace/homspace.hpp"

namespace gospace {

namespace tags {
inline constexpr std::string_view kGoTriple = "go-triple";  // H ⊂ K ⊂ G from the g.o. two-summand list
inline constexpr std::string_view kWallachI = "wallach-type-I";
inline constexpr std::string_view kWallachII = "wallach-type-II";
inline constexpr std::string_view kWallachIII = "wallach-type-III";
inline constexpr std::string_view kControl = "control";
inline constexpr std::string_view kTwoSummand = "two-summand";
}  // namespace tags

struct SpaceSpec {
  std::string family;
  std::vector<int> params;
  std::string token;  // non-numeric parameter (e.g. "su2" for ledger-obata)

  /// Throws SpecParse (with column) or UnknownSpec.
  static SpaceSpec parse(std::string_view text);
  std::string canonical() const;
};

struct SpaceInfo {
  std::string id;           // the id the space was requested under
  std::string canonical;    // family/params form
  std::string description;
  std::vector<std::string> tags;

  bool has_tag(std::string_view tag) const;
};

struct CatalogSpace {
  HomogeneousSpace space;
  Decomposition decomposition;
  SpaceInfo info;
};

/// Default cap on dim g.
inline constexpr Eigen::Index kMaxAmbientDim = 60;

/// Errors: SpecParse, UnknownSpec, UnsupportedRank.
CatalogSpace make_space(const SpaceSpec& spec, Eigen::Index max_dim = kMaxAmbientDim);
CatalogSpace make_space(std::string_view id, Eigen::Index max_dim = kMaxAmbientDim);

struct CatalogEntry {
  std::string id;
  std::string description;
  std::vector<std::string> tags;
};

/// Deterministic listing of the named entries.
const std::vector<CatalogEntry>& list_catalog();

/// Entries carrying a tag whose text contains `filter` (empty: all).
std::vector<CatalogEntry> filter_catalog(std::string_view filter);

}  // namespace gospace
