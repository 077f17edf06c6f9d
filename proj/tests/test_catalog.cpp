#include <gtest/gtest.h>

#include <algorithm>
#include <set>

#include "gospace/catalog.hpp"
#include "gospace/error.hpp"

using namespace gospace;

namespace {

ErrorCode code_of(std::string_view spec) {
  try {
    make_space(spec);
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error for " << spec;
  return ErrorCode::InvalidArgument;
}

std::vector<Eigen::Index> sorted(std::vector<Eigen::Index> v) {
  std::sort(v.begin(), v.end());
  return v;
}

}  // namespace

TEST(Catalog, ListingContainsRequiredEntries) {
  std::set<std::string> ids;
  for (const auto& e : list_catalog()) ids.insert(e.id);
  for (const char* id : {"so5/u2", "su3/su2", "sp2/sp1u1", "so6/so2^3", "su3/t2", "sp3/sp1^3", "ledger-obata/su2",
                         "product-sym/3xS2"})
    EXPECT_TRUE(ids.count(id)) << id;
}

TEST(Catalog, ListingIsDeterministic) {
  const auto& a = list_catalog();
  const auto& b = list_catalog();
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) EXPECT_EQ(a[i].id, b[i].id);
}

TEST(Catalog, TagFilter) {
  const auto w = filter_catalog("wallach");
  ASSERT_FALSE(w.empty());
  for (const auto& e : w) {
    EXPECT_TRUE(std::any_of(e.tags.begin(), e.tags.end(),
                            [](const std::string& t) { return t.find("wallach") != std::string::npos; }))
        << e.id;
  }
  EXPECT_EQ(filter_catalog("").size(), list_catalog().size());
  EXPECT_TRUE(filter_catalog("no-such-tag").empty());
}

TEST(Catalog, ExpectedDimensions) {
  struct Row {
    const char* id;
    Eigen::Index g, h;
    std::vector<Eigen::Index> dims;
  };
  const Row rows[] = {
      {"so5/u2", 10, 4, {2, 4}},
      {"su3/su2", 8, 3, {1, 4}},
      {"sp2/sp1u1", 10, 4, {2, 4}},
      {"so6/so2^3", 15, 3, {4, 4, 4}},
      {"su3/t2", 8, 2, {2, 2, 2}},
      {"sp3/sp1^3", 21, 9, {4, 4, 4}},
      {"ledger-obata/su2", 12, 3, {3, 3, 3}},
      {"product-sym/3xS2", 9, 3, {2, 2, 2}},
      {"sp3/u2sp1", 21, 7, {6, 8}},
  };
  for (const auto& r : rows) {
    const CatalogSpace cs = make_space(r.id);
    EXPECT_EQ(cs.space.dim_g(), r.g) << r.id;
    EXPECT_EQ(cs.space.dim_h(), r.h) << r.id;
    EXPECT_EQ(sorted(cs.decomposition.dims()), r.dims) << r.id;
  }
}

TEST(Catalog, AliasesResolveToFamilies) {
  EXPECT_EQ(make_space("so5/u2").info.canonical, "so-u/2");
  EXPECT_EQ(make_space("su3/t2").info.canonical, "wallach-su/1,1,1");
  EXPECT_EQ(make_space("wallach-su/1,1,1").info.canonical, "wallach-su/1,1,1");
}

TEST(Catalog, ParseErrorsCarryColumn) {
  try {
    SpaceSpec::parse("wallach-so/2,x,2");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::SpecParse);
    EXPECT_NE(std::string(e.what()).find("1:14"), std::string::npos) << e.what();
  }
  EXPECT_EQ(code_of("so-u/"), ErrorCode::SpecParse);
  EXPECT_EQ(code_of("nonsense/1"), ErrorCode::UnknownSpec);
  EXPECT_EQ(code_of("so-u/40"), ErrorCode::UnsupportedRank);
}

TEST(Catalog, EveryEntryBuilds) {
  for (const auto& e : list_catalog()) {
    const CatalogSpace cs = make_space(e.id);
    EXPECT_GE(cs.decomposition.size(), 2u) << e.id;
    EXPECT_EQ(cs.decomposition.dim_m(), cs.space.dim_m()) << e.id;
    EXPECT_FALSE(cs.info.tags.empty()) << e.id;
  }
}

TEST(Catalog, TwoSummandEntriesAreTaggedConsistently) {
  for (const auto& e : list_catalog()) {
    const CatalogSpace cs = make_space(e.id);
    EXPECT_EQ(cs.info.has_tag(tags::kTwoSummand), cs.decomposition.size() == 2) << e.id;
  }
}
