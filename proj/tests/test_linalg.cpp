#include <gtest/gtest.h>

#include "gospace/error.hpp"
#include "gospace/linalg.hpp"
#include "gospace/random.hpp"

using namespace gospace;

TEST(Linalg, NullSpaceOfRankDeficientMatrix) {
  Mat a(2, 4);
  a << 1, 2, 3, 4,
       2, 4, 6, 8;
  const Mat k = null_space(a);
  ASSERT_EQ(k.rows(), 3);
  EXPECT_LT((a * k.transpose()).norm(), 1e-12);
  EXPECT_LT((k * k.transpose() - Mat::Identity(3, 3)).norm(), 1e-12);
}

TEST(Linalg, NullSpaceFloorCatchesRoundingNoise) {
  // a matrix that is zero up to rounding has full rank under a purely
  // relative cutoff
  Mat a = 1e-17 * Mat::Random(3, 3);
  EXPECT_EQ(null_space(a).rows(), 0);
  EXPECT_EQ(null_space(a, -1.0, 1e-13).rows(), 3);
}

TEST(Linalg, IntersectCoordinatePlanes) {
  Mat a = Mat::Zero(2, 3);
  a(0, 0) = 1;
  a(1, 1) = 1;
  Mat b = Mat::Zero(2, 3);
  b(0, 1) = 1;
  b(1, 2) = 1;
  const Mat c = intersect(a, b);
  ASSERT_EQ(c.rows(), 1);
  EXPECT_NEAR(std::abs(c(0, 1)), 1.0, 1e-12);
}

TEST(Linalg, OrthogonalComplementDimension) {
  Rng rng(3);
  Mat rows(2, 5);
  rows.row(0) = gaussian_vector(rng, 5).transpose();
  rows.row(1) = gaussian_vector(rng, 5).transpose();
  const Mat c = orthogonal_complement(rows, 5);
  ASSERT_EQ(c.rows(), 3);
  EXPECT_LT((rows * c.transpose()).norm(), 1e-12);
}

TEST(Linalg, LstsqReturnsMinimalNormSolution) {
  // x + y = 2 has minimal-norm solution (1, 1)
  Mat a(1, 2);
  a << 1, 1;
  Vec b(1);
  b << 2;
  const LeastSquares ls = lstsq(a, b);
  EXPECT_EQ(ls.rank, 1);
  EXPECT_NEAR(ls.x(0), 1.0, 1e-14);
  EXPECT_NEAR(ls.x(1), 1.0, 1e-14);
  EXPECT_LT(ls.residual.norm(), 1e-14);
}

TEST(Linalg, LstsqResidualIsOrthogonalToRange) {
  Rng rng(11);
  Mat a(6, 3);
  for (int j = 0; j < 3; ++j) a.col(j) = gaussian_vector(rng, 6);
  const Vec b = gaussian_vector(rng, 6);
  const LeastSquares ls = lstsq(a, b);
  EXPECT_LT((a.transpose() * ls.residual).norm(), 1e-12);
}

TEST(Linalg, LstsqShapeMismatchThrows) {
  EXPECT_THROW(lstsq(Mat::Identity(3, 3), Vec::Zero(2)), Error);
}

TEST(Linalg, OrthonormalizeRowsAgainstMetric) {
  Mat metric(3, 3);
  metric << 2, 0.5, 0,
            0.5, 1, 0,
            0, 0, 3;
  Mat rows(3, 3);
  rows << 1, 0, 0,
          1, 1, 0,
          2, 1, 0;  // dependent third row
  const Mat r = orthonormalize_rows(rows, metric);
  ASSERT_EQ(r.rows(), 2);
  EXPECT_LT((r * metric * r.transpose() - Mat::Identity(2, 2)).norm(), 1e-12);
}

TEST(Linalg, DefaultRankToleranceIsAdjustable) {
  const double old = default_rank_rtol();
  Mat a = Mat::Identity(3, 3);
  a(2, 2) = 1e-9;
  EXPECT_EQ(numerical_rank(a), 3);
  set_default_rank_rtol(1e-6);
  EXPECT_EQ(numerical_rank(a), 2);
  set_default_rank_rtol(old);
}
