#include <gtest/gtest.h>

#include <algorithm>

#include "gospace/catalog.hpp"
#include "gospace/classical.hpp"
#include "gospace/error.hpp"
#include "gospace/homspace.hpp"
#include "gospace/random.hpp"

using namespace gospace;

namespace {

// so(3) with h = span(e_0), i.e. the round 2-sphere
HomogeneousSpace sphere() {
  LieAlgebra g = from_matrices(classical::so_basis(3));
  Mat h = Mat::Zero(1, 3);
  h(0, 0) = 1;
  return HomogeneousSpace::build(std::move(g), h);
}

std::vector<Eigen::Index> sorted_dims(const Decomposition& d) {
  auto v = d.dims();
  std::sort(v.begin(), v.end());
  return v;
}

}  // namespace

TEST(HomogeneousSpace, AdaptedBasisIsQOrthonormal) {
  const CatalogSpace cs = make_space("so5/u2");
  const auto& sp = cs.space;
  Mat p(sp.dim_g(), sp.dim_g());
  p << sp.h_basis(), sp.m_basis();
  EXPECT_LT((p * sp.g().q_form() * p.transpose() - Mat::Identity(sp.dim_g(), sp.dim_g())).norm(), 1e-10);
  EXPECT_EQ(sp.dim_h(), 4);
  EXPECT_EQ(sp.dim_m(), 6);
  EXPECT_LE(sp.closure_residual(), 1e-10);
  EXPECT_LE(sp.reductivity_residual(), 1e-10);
}

TEST(HomogeneousSpace, CoordinateRoundTrip) {
  const CatalogSpace cs = make_space("su3/su2");
  Rng rng(1);
  const Vec v = gaussian_vector(rng, cs.space.dim_g());
  EXPECT_LT((cs.space.from_adapted(cs.space.to_adapted(v)) - v).norm(), 1e-12);
}

TEST(HomogeneousSpace, AdaptedBracketMatchesOriginal) {
  const CatalogSpace cs = make_space("sp2/sp1u1");
  const auto& sp = cs.space;
  Rng rng(2);
  const Vec x = gaussian_vector(rng, sp.dim_g());
  const Vec y = gaussian_vector(rng, sp.dim_g());
  const Vec lhs = sp.bracket(sp.to_adapted(x), sp.to_adapted(y));
  const Vec rhs = sp.to_adapted(sp.g().bracket(x, y));
  EXPECT_LT((lhs - rhs).norm(), 1e-12 * (1 + rhs.norm()));
}

TEST(HomogeneousSpace, RandomPlaneIsNotSubalgebra) {
  LieAlgebra g = from_matrices(classical::so_basis(5));
  Rng rng(8);
  Mat h(2, g.dim());
  h.row(0) = gaussian_vector(rng, g.dim()).transpose();
  h.row(1) = gaussian_vector(rng, g.dim()).transpose();
  try {
    HomogeneousSpace::build(std::move(g), h);
    FAIL() << "expected NotSubalgebra";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotSubalgebra);
  }
}

TEST(HomogeneousSpace, HActionIsSkewOnM) {
  const CatalogSpace cs = make_space("so-u/3");
  for (Eigen::Index a = 0; a < cs.space.dim_h(); ++a) {
    const Mat& m = cs.space.ad_h_on_m(a);
    EXPECT_LT((m + m.transpose()).norm(), 1e-12);
  }
}

TEST(Isotropy, So5U2SplitsAsFourPlusTwo) {
  const CatalogSpace cs = make_space("so5/u2");
  const Decomposition d = isotropy_decompose(cs.space, 1);
  EXPECT_EQ(sorted_dims(d), (std::vector<Eigen::Index>{2, 4}));
  EXPECT_EQ(d.commutant_dim, 2);
  EXPECT_FALSE(d.non_unique());
  EXPECT_EQ(sorted_dims(cs.decomposition), (std::vector<Eigen::Index>{2, 4}));
}

TEST(Isotropy, Su3T2SplitsIntoThreePlanes) {
  const CatalogSpace cs = make_space("su3/t2");
  const Decomposition d = isotropy_decompose(cs.space, 1);
  EXPECT_EQ(sorted_dims(d), (std::vector<Eigen::Index>{2, 2, 2}));
  const auto chk = check_decomposition(cs.space, d);
  EXPECT_LE(chk.invariance, 1e-9);
}

TEST(Isotropy, SphereIsIrreducible) {
  const HomogeneousSpace sp = sphere();
  const Decomposition d = isotropy_decompose(sp, 1);
  ASSERT_EQ(d.size(), 1u);
  EXPECT_EQ(d.dims()[0], 2);
}

TEST(Isotropy, SeedDoesNotChangeSplitting) {
  const CatalogSpace cs = make_space("so5/u2");
  const Decomposition a = isotropy_decompose(cs.space, 1);
  const Decomposition b = isotropy_decompose(cs.space, 99);
  ASSERT_EQ(a.size(), b.size());
  // the projectors agree up to ordering
  for (std::size_t i = 0; i < a.size(); ++i) {
    double best = 1e9;
    for (std::size_t j = 0; j < b.size(); ++j) best = std::min(best, (a.projector(i) - b.projector(j)).norm());
    EXPECT_LT(best, 1e-8);
  }
}

TEST(Decomposition, CatalogSplittingsAreInvariant) {
  for (const auto& e : list_catalog()) {
    const CatalogSpace cs = make_space(e.id);
    const auto chk = check_decomposition(cs.space, cs.decomposition);
    EXPECT_LE(chk.orthogonality, 1e-9) << e.id;
    EXPECT_EQ(chk.completeness, 0.0) << e.id;
    EXPECT_LE(chk.invariance, 1e-9) << e.id;
    EXPECT_NO_THROW(validate_decomposition(cs.space, cs.decomposition)) << e.id;
  }
}

TEST(Decomposition, IncompleteSplittingRejected) {
  const CatalogSpace cs = make_space("su3/t2");
  const Decomposition partial({cs.decomposition.summand(0), cs.decomposition.summand(1)});
  try {
    validate_decomposition(cs.space, partial);
    FAIL() << "expected InvalidDecomposition";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::InvalidDecomposition);
  }
}

TEST(Decomposition, ThetasAreSquaredComponentNorms) {
  const CatalogSpace cs = make_space("su3/t2");
  Rng rng(4);
  const Vec y = gaussian_vector(rng, cs.space.dim_m());
  const Vec th = cs.decomposition.thetas(y);
  EXPECT_NEAR(th.sum(), y.squaredNorm(), 1e-12);
  for (std::size_t a = 0; a < 3; ++a)
    EXPECT_NEAR(th(static_cast<Eigen::Index>(a)), cs.decomposition.project(y, a).squaredNorm(), 1e-12);
}

TEST(Centralizer, SphereHasTrivialCentralizer) {
  const HomogeneousSpace sp = sphere();
  Rng rng(3);
  const Vec u = gaussian_vector(rng, 2);
  EXPECT_EQ(centralizer_in_h(sp, u).rows(), 0);
  const TildeCentralizer t = tilde_centralizer(sp, u);
  EXPECT_EQ(t.normalizer.rows(), 1);
  EXPECT_EQ(t.tilde.rows(), 1);
}

TEST(Centralizer, CentralDirectionIsCentralizedByAllOfH) {
  // in su(3)/su(2) the second summand is the centre of u(2)
  const CatalogSpace cs = make_space("su3/su2");
  const Vec u = cs.decomposition.summand(1).row(0).transpose();
  EXPECT_EQ(centralizer_in_h(cs.space, u).rows(), cs.space.dim_h());
  EXPECT_EQ(tilde_centralizer(cs.space, u).tilde.rows(), 0);
}

TEST(Centralizer, Su3T2GenericVector) {
  const CatalogSpace cs = make_space("su3/t2");
  Rng rng(6);
  const Vec u = gaussian_vector(rng, cs.space.dim_m());
  const Mat c = centralizer_in_h(cs.space, u);
  EXPECT_EQ(c.rows(), 0);
  // one-summand vector: centralized by the kernel of one root
  const Vec u1 = cs.decomposition.summand(0).row(0).transpose();
  EXPECT_EQ(centralizer_in_h(cs.space, u1).rows(), 1);
  EXPECT_LT((cs.space.h_action(u1) * centralizer_in_h(cs.space, u1).transpose()).norm(), 1e-12);
}

TEST(Centralizer, TildeDimensionCount) {
  for (const char* id : {"so-u/3", "sp3/sp1^3", "su-su/3,2", "so5/u2"}) {
    const CatalogSpace cs = make_space(id);
    Rng rng(12);
    for (int trial = 0; trial < 5; ++trial) {
      // vectors in one summand have nontrivial centralizers
      const Vec u = cs.decomposition.summand(0).transpose() * unit_vector(rng, cs.decomposition.summand(0).rows());
      const TildeCentralizer t = tilde_centralizer(cs.space, u);
      EXPECT_EQ(t.tilde.rows(), t.normalizer.rows() - t.centralizer.rows()) << id;
      if (t.centralizer.rows() > 0 && t.tilde.rows() > 0) {
        EXPECT_LT((t.tilde * t.centralizer.transpose()).norm(), 1e-10) << id;
      }
    }
  }
}

TEST(SummandBrackets, TwoSummandBracketIsNonzero) {
  for (const char* id : {"so5/u2", "su3/su2", "sp2/sp1u1", "sp3/u2sp1"}) {
    const CatalogSpace cs = make_space(id);
    EXPECT_GT(summand_brackets(cs.space, cs.decomposition, 0, 1).norm(), 1e-6) << id;
  }
}
