#include <gtest/gtest.h>

#include <cmath>

#include "gospace/catalog.hpp"
#include "gospace/error.hpp"
#include "gospace/finsler.hpp"
#include "gospace/random.hpp"

using namespace gospace;

namespace {

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error";
  return ErrorCode::InvalidArgument;
}

double half_f2(const LFunction& l, const Decomposition& dec, const Vec& y) { return 0.5 * l.value(dec.thetas(y)); }

Mat fd_hessian(const LFunction& l, const Decomposition& dec, const Vec& y, double h = 1e-4) {
  const Eigen::Index n = y.size();
  Mat out(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) {
      Vec pp = y, pm = y, mp = y, mm = y;
      pp(i) += h; pp(j) += h;
      pm(i) += h; pm(j) -= h;
      mp(i) -= h; mp(j) += h;
      mm(i) -= h; mm(j) -= h;
      out(i, j) = (half_f2(l, dec, pp) - half_f2(l, dec, pm) - half_f2(l, dec, mp) + half_f2(l, dec, mm)) / (4 * h * h);
    }
  return out;
}

// L(theta_1, theta_2) straight from the definition
double phi_l(const std::vector<double>& c, double t1, double t2) {
  const double s = t1 + t2;
  const double t = std::sqrt(t2 / s);
  double phi = 0.0;
  for (std::size_t k = c.size(); k-- > 0;) phi = phi * t + c[k];
  return s * phi * phi;
}

}  // namespace

TEST(Polynomial, EvaluateDifferentiateDivide) {
  const Polynomial p({1.0, 0.0, 0.25});
  EXPECT_DOUBLE_EQ(p(2.0), 2.0);
  EXPECT_DOUBLE_EQ(p.derivative()(2.0), 1.0);
  const Polynomial q = p.derivative().divide_by_t();
  EXPECT_DOUBLE_EQ(q(3.0), 0.5);
  EXPECT_TRUE(p.derivative().vanishes_at_zero());
}

TEST(LFunction, LinearGradientAndHessian) {
  const LFunction l = l_linear({2.0, 3.0});
  const Vec th = Vec::Constant(2, 0.5);
  EXPECT_DOUBLE_EQ(l.value(th), 2.5);
  EXPECT_EQ(l.gradient(th), (Vec(2) << 2.0, 3.0).finished());
  EXPECT_EQ(l.hessian(th).norm(), 0.0);
  EXPECT_FALSE(l.is_normal());
  EXPECT_TRUE(l_linear({4.0, 4.0, 4.0}).is_normal());
}

TEST(LFunction, NonPositiveCoefficientRejected) {
  EXPECT_EQ(code_of([] { l_linear({1.0, 0.0}); }), ErrorCode::NonPositiveCoefficient);
  EXPECT_EQ(code_of([] { l_linear({1.0, -2.0}); }), ErrorCode::NonPositiveCoefficient);
}

TEST(LFunction, PhiGradientMatchesFiniteDifferences) {
  const std::vector<double> c = {1.0, 0.0, 0.25};
  const LFunction l = parse_metric("phi:1,0,0.25");
  Rng rng(3);
  std::uniform_real_distribution<double> u(0.05, 2.0);
  const double h = 1e-6;
  for (int i = 0; i < 50; ++i) {
    const double t1 = u(rng), t2 = u(rng);
    Vec th(2);
    th << t1, t2;
    EXPECT_NEAR(l.value(th), phi_l(c, t1, t2), 1e-13);
    const Vec g = l.gradient(th);
    const double d1 = (phi_l(c, t1 + h, t2) - phi_l(c, t1 - h, t2)) / (2 * h);
    const double d2 = (phi_l(c, t1, t2 + h) - phi_l(c, t1, t2 - h)) / (2 * h);
    EXPECT_NEAR(g(0), d1, 1e-7);
    EXPECT_NEAR(g(1), d2, 1e-7);
  }
}

TEST(LFunction, PhiHessianMatchesGradientDifferences) {
  for (const char* spec : {"phi:1,0,0.25", "phi:1,0.1", "phi:1,0.05,0.1,-0.02"}) {
    const LFunction l = parse_metric(spec);
    Rng rng(4);
    std::uniform_real_distribution<double> u(0.05, 2.0);
    const double h = 1e-6;
    for (int i = 0; i < 30; ++i) {
      Vec th(2);
      th << u(rng), u(rng);
      const Mat hs = l.hessian(th);
      for (int k = 0; k < 2; ++k) {
        Vec p = th, m = th;
        p(k) += h;
        m(k) -= h;
        const Vec col = (l.gradient(p) - l.gradient(m)) / (2 * h);
        EXPECT_LT((hs.col(k) - col).norm(), 1e-7) << spec;
      }
    }
  }
}

TEST(LFunction, PositiveHomogeneity) {
  for (const char* spec : {"phi:1,0,0.25", "phi:1,0.1", "pert3:1,1,1,0.5", "linear:1,2,3"}) {
    const LFunction l = parse_metric(spec);
    Rng rng(5);
    std::uniform_real_distribution<double> u(0.1, 3.0);
    for (int i = 0; i < 20; ++i) {
      Vec th(l.arity());
      for (Eigen::Index k = 0; k < th.size(); ++k) th(k) = u(rng);
      const double t = u(rng);
      EXPECT_LE(std::abs(l.value(t * th) - t * l.value(th)), 1e-12 * t * l.value(th)) << spec;
    }
  }
}

TEST(LFunction, ParseErrors) {
  EXPECT_EQ(code_of([] { parse_metric("quadratic:1,2"); }), ErrorCode::SpecParse);
  EXPECT_EQ(code_of([] { parse_metric("linear:1,,2"); }), ErrorCode::SpecParse);
  EXPECT_EQ(code_of([] { parse_metric("phi:1,-2"); }), ErrorCode::InvalidProfile);
  const ErrorCode steep = code_of([] { parse_metric("phi:1,0,5"); });
  EXPECT_TRUE(steep == ErrorCode::NotStronglyConvex || steep == ErrorCode::InvalidProfile);
  EXPECT_EQ(code_of([] { parse_metric("pert3:1,1"); }), ErrorCode::SpecParse);
  try {
    parse_metric("linear:1,x");
    FAIL();
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("1:10"), std::string::npos) << e.what();
  }
}

TEST(FundamentalTensor, NormalMetricGivesIdentity) {
  const CatalogSpace cs = make_space("so5/u2");
  Rng rng(1);
  const Vec y = gaussian_vector(rng, cs.space.dim_m());
  const Mat a = fundamental_tensor(l_linear({1.0, 1.0}), cs.decomposition, y);
  EXPECT_LT((a - Mat::Identity(6, 6)).norm(), 1e-14);
}

TEST(FundamentalTensor, LinearMetricIsBlockDiagonal) {
  const CatalogSpace cs = make_space("su3/t2");
  const auto& dec = cs.decomposition;
  Rng rng(1);
  const Vec y = gaussian_vector(rng, cs.space.dim_m());
  const Mat a = fundamental_tensor(l_linear({1.0, 2.0, 5.0}), dec, y);
  const Mat want = dec.projector(0) + 2.0 * dec.projector(1) + 5.0 * dec.projector(2);
  EXPECT_LT((a - want).norm(), 1e-13);
}

TEST(FundamentalTensor, MatchesFiniteDifferenceHessianOnSo5U2) {
  const CatalogSpace cs = make_space("so5/u2");
  Rng rng(7);
  for (const char* spec : {"phi:1,0,0.25", "phi:1,0.1"}) {
    const LFunction l = parse_metric(spec);
    for (int i = 0; i < 20; ++i) {
      const Vec y = unit_vector(rng, cs.space.dim_m());
      const Mat a = fundamental_tensor(l, cs.decomposition, y);
      EXPECT_LT((a - fd_hessian(l, cs.decomposition, y)).cwiseAbs().maxCoeff(), 1e-5) << spec;
    }
  }
}

TEST(FundamentalTensor, ZeroHomogeneous) {
  const CatalogSpace cs = make_space("so5/u2");
  const LFunction l = parse_metric("phi:1,0,0.25");
  Rng rng(8);
  const Vec y = gaussian_vector(rng, cs.space.dim_m());
  EXPECT_LT((metric_operator(l, cs.decomposition, 3.7 * y) - metric_operator(l, cs.decomposition, y)).norm(), 1e-12);
}

TEST(FundamentalTensor, Errors) {
  const CatalogSpace cs = make_space("so5/u2");
  const Vec zero = Vec::Zero(cs.space.dim_m());
  EXPECT_EQ(code_of([&] { fundamental_tensor(l_linear({1, 2}), cs.decomposition, zero); }), ErrorCode::ZeroVector);
  // phi'(0) != 0: not differentiable where the second component vanishes
  const Vec y1 = cs.decomposition.summand(0).row(0).transpose();
  EXPECT_EQ(code_of([&] { fundamental_tensor(parse_metric("phi:1,0.1"), cs.decomposition, y1); }),
            ErrorCode::BoundaryNondifferentiable);
  EXPECT_NO_THROW(fundamental_tensor(parse_metric("phi:1,0,0.25"), cs.decomposition, y1));
  EXPECT_EQ(code_of([&] { fundamental_tensor(l_linear({1, 2, 3}), cs.decomposition, y1); }),
            ErrorCode::DimensionMismatch);
}

TEST(MetricOperator, AuOfUMatchesMatrixProduct) {
  const CatalogSpace cs = make_space("su3/t2");
  const LFunction l = parse_metric("pert3:1,1,1,0.5");
  Rng rng(9);
  for (int i = 0; i < 50; ++i) {
    const Vec u = gaussian_vector(rng, cs.space.dim_m());
    const Vec au = a_u_of_u(l, cs.decomposition, u);
    EXPECT_LT((au - metric_operator(l, cs.decomposition, u) * u).norm(), 1e-9 * au.norm());
  }
}

TEST(MetricOperator, AuOfUStaysInSummand) {
  const CatalogSpace cs = make_space("su3/t2");
  const LFunction l = parse_metric("pert3:1,1,1,0.5");
  const Vec u = cs.decomposition.summand(1).row(0).transpose();
  const Vec au = a_u_of_u(l, cs.decomposition, u);
  EXPECT_LT((au - cs.decomposition.project(au, 1)).norm(), 1e-14);
}

TEST(MetricOperator, CommutesWithIsotropyAlongY) {
  // [A_y, ad(w)](y) = 0 for w in h
  for (const char* id : {"so5/u2", "sp3/sp1^3"}) {
    const CatalogSpace cs = make_space(id);
    const LFunction l = parse_metric(cs.decomposition.size() == 2 ? "phi:1,0,0.25" : "pert3:1,1,1,0.5");
    Rng rng(10);
    for (int i = 0; i < 20; ++i) {
      const Vec y = unit_vector(rng, cs.space.dim_m());
      const Mat a = metric_operator(l, cs.decomposition, y);
      for (Eigen::Index w = 0; w < cs.space.dim_h(); ++w) {
        const Mat& adw = cs.space.ad_h_on_m(w);
        EXPECT_LT((a * (adw * y) - adw * (a * y)).norm(), 1e-8) << id;
      }
    }
  }
}

TEST(Spray, SatisfiesDefiningEquation) {
  const CatalogSpace cs = make_space("so5/u2");
  const LFunction l = parse_metric("phi:1,0,0.25");
  Rng rng(11);
  for (int i = 0; i < 20; ++i) {
    const Vec y = unit_vector(rng, cs.space.dim_m());
    const Mat g = fundamental_tensor(l, cs.decomposition, y);
    const Vec eta = spray_vector(cs.space, cs.decomposition, l, y);
    for (Eigen::Index k = 0; k < cs.space.dim_m(); ++k) {
      const Vec e = Vec::Unit(cs.space.dim_m(), k);
      const Vec br = cs.space.bracket_m(e, y).tail(cs.space.dim_m());
      EXPECT_NEAR(eta.dot(g * e), y.dot(g * br), 1e-8);
    }
  }
}

TEST(Spray, VanishesForNormalMetric) {
  const CatalogSpace cs = make_space("sp3/sp1^3");
  Rng rng(12);
  const Vec y = gaussian_vector(rng, cs.space.dim_m());
  EXPECT_LT(spray_vector(cs.space, cs.decomposition, l_linear({1, 1, 1}), y).norm(), 1e-12);
}

TEST(Convexity, LinearMinEigenvalue) {
  const ConvexityReport r = strong_convexity_check(l_linear({0.5, 2.0}), {3, 2}, 100, 1);
  EXPECT_TRUE(r.passed);
  EXPECT_NEAR(r.min_eigenvalue, 0.5, 1e-12);
}

TEST(Convexity, MildProfilePasses) {
  const ConvexityReport r = strong_convexity_check(phi_l_function({Polynomial({1.0, 0.0, 0.25})}), {4, 2}, 400, 3);
  EXPECT_TRUE(r.passed);
  EXPECT_GT(r.min_eigenvalue, 0.0);
}

TEST(Convexity, SteepProfileFailsWithWitness) {
  const ConvexityReport r = strong_convexity_check(phi_l_function({Polynomial({1.0, 0.0, 5.0})}), {4, 2}, 400, 3);
  EXPECT_FALSE(r.passed);
  EXPECT_LE(r.min_eigenvalue, 0.0);
  ASSERT_EQ(r.witness.size(), 6);
  const Decomposition dec = coordinate_decomposition({4, 2});
  const LFunction l = phi_l_function({Polynomial({1.0, 0.0, 5.0})});
  const Eigen::SelfAdjointEigenSolver<Mat> es(fundamental_tensor(l, dec, r.witness));
  EXPECT_LE(es.eigenvalues().minCoeff(), 0.0);
}

TEST(Convexity, ConeSingularProfileSkipsFace) {
  const ConvexityReport r = strong_convexity_check(parse_metric("phi:1,0.1"), {4, 2}, 400, 3);
  EXPECT_TRUE(r.passed);
  EXPECT_GT(r.skipped_boundary, 0);
}
