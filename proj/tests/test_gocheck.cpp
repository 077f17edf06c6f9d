#include <gtest/gtest.h>

#include "gospace/catalog.hpp"
#include "gospace/error.hpp"
#include "gospace/gocheck.hpp"
#include "gospace/random.hpp"

using namespace gospace;

namespace {

std::vector<Vec> dummy_samples(std::size_t n) { return std::vector<Vec>(n, Vec::Unit(2, 0)); }

GoSample sample(double op, double spray) { return {op, spray, false}; }

}  // namespace

TEST(VerdictPolicy, AllBelowToleranceIsGo) {
  const auto r = aggregate_go(dummy_samples(3), {sample(1e-12, 2e-12), sample(0, 0), sample(1e-9, 1e-9)}, 1e-8, 1);
  EXPECT_EQ(r.verdict, Verdict::GO);
  EXPECT_FALSE(r.consistency_flag);
}

TEST(VerdictPolicy, ClearFailureUnderBothIsNotGo) {
  const auto r = aggregate_go(dummy_samples(3), {sample(0, 0), sample(2e-5, 3e-5), sample(1e-7, 1e-7)}, 1e-8, 1);
  EXPECT_EQ(r.verdict, Verdict::NOT_GO);
  EXPECT_DOUBLE_EQ(r.witness_residual, 2e-5);
}

TEST(VerdictPolicy, GrayZoneIsInconclusive) {
  const auto r = aggregate_go(dummy_samples(2), {sample(0, 0), sample(1e-7, 1e-7)}, 1e-8, 1);
  EXPECT_EQ(r.verdict, Verdict::INCONCLUSIVE);
}

TEST(VerdictPolicy, CriteriaContradictingRaisesFlag) {
  const auto r = aggregate_go(dummy_samples(2), {sample(0, 0), sample(1e-12, 1.0)}, 1e-8, 1);
  EXPECT_EQ(r.verdict, Verdict::INCONCLUSIVE);
  EXPECT_TRUE(r.consistency_flag);
  EXPECT_EQ(r.disagreements, 1);
}

TEST(VerdictPolicy, SkippedSamplesDoNotCount) {
  std::vector<GoSample> s = {sample(0, 0), {1.0, 1.0, true}};
  const auto r = aggregate_go(dummy_samples(2), s, 1e-8, 1);
  EXPECT_EQ(r.verdict, Verdict::GO);
  EXPECT_EQ(r.skipped, 1);
}

TEST(GoCheck, NormalMetricIsGoAndNrEverywhere) {
  for (const auto& e : list_catalog()) {
    const CatalogSpace cs = make_space(e.id);
    const LFunction l = l_linear(std::vector<double>(cs.decomposition.size(), 1.0));
    const CheckReport go = go_verdict(cs.space, cs.decomposition, l, 40, 1, 1e-8);
    EXPECT_EQ(go.verdict, Verdict::GO) << e.id;
    const CheckReport nr = nr_check(cs.space, cs.decomposition, l, 40, 1, 1e-8);
    EXPECT_EQ(nr.verdict, Verdict::NR) << e.id;
  }
}

TEST(GoCheck, WallachUnequalIsNotGoUnderBothCriteria) {
  const CatalogSpace cs = make_space("su3/t2");
  const CheckReport r = go_verdict(cs.space, cs.decomposition, parse_metric("linear:1,1,2"), 200, 42, 1e-8);
  EXPECT_EQ(r.verdict, Verdict::NOT_GO);
  EXPECT_GT(r.witness_residual, 1e-3);
  EXPECT_GT(r.witness_residual_spray, 1e-3);
  EXPECT_LE(r.max_discrepancy, 1e-10);
  EXPECT_FALSE(r.consistency_flag);
}

TEST(GoCheck, WitnessReproducesResidual) {
  const CatalogSpace cs = make_space("sp3/u2sp1");
  const LFunction l = parse_metric("phi:1,0,0.25");
  const CheckReport r = go_verdict(cs.space, cs.decomposition, l, 100, 3, 1e-8);
  ASSERT_EQ(r.verdict, Verdict::NOT_GO);
  EXPECT_EQ(go_check_operator(cs.space, cs.decomposition, l, r.witness).residual, r.witness_residual);
  EXPECT_EQ(go_check_spray(cs.space, cs.decomposition, l, r.witness), r.witness_residual_spray);
}

TEST(GoCheck, SolutionSolvesTheEquation) {
  const CatalogSpace cs = make_space("so5/u2");
  const LFunction l = parse_metric("phi:1,0,0.25");
  Rng rng(2);
  const Vec u = unit_vector(rng, cs.space.dim_m());
  const OperatorResult r = go_check_operator(cs.space, cs.decomposition, l, u);
  const Vec au = a_u_of_u(l, cs.decomposition, u);
  const Vec lhs = cs.space.bracket(cs.space.embed_h(r.u_prime), cs.space.embed_m(au));
  EXPECT_LT((lhs - cs.space.bracket_m(au, u)).norm(), 1e-10);
}

TEST(GoCheck, ResidualIsScaleInvariant) {
  const CatalogSpace cs = make_space("sp3/u2sp1");
  const LFunction l = parse_metric("linear:1,2");
  Rng rng(3);
  const Vec u = unit_vector(rng, cs.space.dim_m());
  const double r1 = go_check_operator(cs.space, cs.decomposition, l, u).residual;
  const double r2 = go_check_operator(cs.space, cs.decomposition, l, 17.0 * u).residual;
  EXPECT_NEAR(r1, r2, 1e-12 * r1);
}

TEST(GoCheck, SingleSummandVectorsPassEvenOnControl) {
  const CatalogSpace cs = make_space("sp3/u2sp1");
  const LFunction l = parse_metric("linear:1,2");
  Rng rng(4);
  for (std::size_t a = 0; a < 2; ++a) {
    const Vec u = cs.decomposition.summand(a).transpose() * unit_vector(rng, cs.decomposition.summand(a).rows());
    EXPECT_LE(go_check_operator(cs.space, cs.decomposition, l, u).residual, 1e-12);
    EXPECT_LE(go_check_spray(cs.space, cs.decomposition, l, u), 1e-12);
  }
}

TEST(GoCheck, NrWitnessForNonNormal) {
  const CatalogSpace cs = make_space("so5/u2");
  const CheckReport r = nr_check(cs.space, cs.decomposition, parse_metric("phi:1,0,0.25"), 200, 42, 1e-8);
  EXPECT_EQ(r.verdict, Verdict::NOT_NR);
  EXPECT_GT(r.witness_residual, 1e-3);
  EXPECT_EQ(nr_residual(cs.space, cs.decomposition, parse_metric("phi:1,0,0.25"), r.witness), r.witness_residual);
}

TEST(PhiCheck, AgreesWithOperatorCheck) {
  for (const char* id : {"so5/u2", "sp3/u2sp1"}) {
    const CatalogSpace cs = make_space(id);
    const auto& dec = cs.decomposition;
    for (const char* spec : {"phi:1,0,0.25", "phi:1,0.1"}) {
      const LFunction l = parse_metric(spec);
      Rng rng(5);
      for (int i = 0; i < 25; ++i) {
        const Vec u1 = dec.summand(0).transpose() * gaussian_vector(rng, dec.summand(0).rows());
        const Vec u2 = dec.summand(1).transpose() * gaussian_vector(rng, dec.summand(1).rows());
        const PhiCheckResult p = two_summand_phi_check(cs.space, dec, l, u1, u2);
        const double op = go_check_operator(cs.space, dec, l, u1 + u2).residual;
        EXPECT_NEAR(p.residual, op, 1e-10) << id << " " << spec;
        EXPECT_GT(p.coeff1, 0.0);
        EXPECT_GT(p.coeff2, 0.0);
      }
    }
  }
}

TEST(PhiCheck, RejectsNonPhiMetric) {
  const CatalogSpace cs = make_space("so5/u2");
  const Vec u = Vec::Ones(cs.space.dim_m());
  try {
    two_summand_phi_check(cs.space, cs.decomposition, l_linear({1, 2}), u, u);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::InvalidArgument);
  }
}

TEST(WallachSystem, BlocksReassembleOperatorResidual) {
  for (const char* id : {"su3/t2", "so6/so2^3", "ledger-obata/su2"}) {
    const CatalogSpace cs = make_space(id);
    for (const char* spec : {"linear:1,1,2", "pert3:1,1,1,0.5", "linear:1,1,1"}) {
      const LFunction l = parse_metric(spec);
      for (const Vec& u : sampling_plan(cs.decomposition, 30, 9)) {
        const WallachResult w = wallach_system_check(cs.space, cs.decomposition, l, u);
        const double rss = std::sqrt(w.blocks[0] * w.blocks[0] + w.blocks[1] * w.blocks[1] +
                                     w.blocks[2] * w.blocks[2] + w.h_part * w.h_part);
        EXPECT_NEAR(rss, w.total, 1e-14);
        EXPECT_NEAR(w.total, go_check_operator(cs.space, cs.decomposition, l, u).residual, 1e-10) << id << " " << spec;
      }
    }
  }
}

TEST(Centralizer, TrivialWhenOneVectorVanishes) {
  const CatalogSpace cs = make_space("sp3/u2sp1");
  const Vec x = cs.decomposition.summand(0).row(0).transpose();
  const auto r = centralizer_condition_check(cs.space, cs.decomposition, x, Vec::Zero(cs.space.dim_m()), 1e-8);
  EXPECT_TRUE(r.feasible);
  EXPECT_TRUE(r.unique);
}

TEST(Centralizer, FeasibleOnGoSpaceInfeasibleOnControl) {
  Rng rng(6);
  for (const char* id : {"so5/u2", "su3/su2", "sp2/sp1u1", "sp3/u2sp1"}) {
    const CatalogSpace cs = make_space(id);
    const auto& dec = cs.decomposition;
    const Vec x = dec.summand(0).transpose() * unit_vector(rng, dec.summand(0).rows());
    const Vec y = dec.summand(1).transpose() * unit_vector(rng, dec.summand(1).rows());
    const auto r = centralizer_condition_check(cs.space, dec, x, y, 1e-8);
    const bool control = std::string(id) == "sp3/u2sp1";
    EXPECT_EQ(r.feasible, !control) << id << " residual " << r.residual;
    if (r.feasible) {
      EXPECT_TRUE(r.unique) << id;
      // the returned elements solve the system
      const Vec lhs = cs.space.bracket(cs.space.embed_h(r.z_y), cs.space.embed_m(x)) +
                      cs.space.bracket(cs.space.embed_h(r.z_x), cs.space.embed_m(y));
      EXPECT_LT((lhs - cs.space.bracket_m(x, y)).norm(), 1e-10) << id;
      EXPECT_LT((cs.space.h_action(x) * r.z_x).norm(), 1e-10) << id;
      EXPECT_LT((cs.space.h_action(y) * r.z_y).norm(), 1e-10) << id;
    }
  }
}

TEST(RiemannTwoParam, GoSpaceAndControl) {
  const CatalogSpace go = make_space("so5/u2");
  EXPECT_EQ(riemann_two_param_check(go.space, go.decomposition, 1, 2, 100, 1, 1e-8).verdict, Verdict::GO);
  const CatalogSpace ctl = make_space("sp3/u2sp1");
  EXPECT_EQ(riemann_two_param_check(ctl.space, ctl.decomposition, 1, 2, 100, 1, 1e-8).verdict, Verdict::NOT_GO);
  EXPECT_EQ(riemann_two_param_check(ctl.space, ctl.decomposition, 3, 3, 100, 1, 1e-8).verdict, Verdict::GO);
}

TEST(Verdict, StringRoundTrip) {
  for (Verdict v : {Verdict::GO, Verdict::NOT_GO, Verdict::NR, Verdict::NOT_NR, Verdict::INCONCLUSIVE})
    EXPECT_EQ(verdict_from_string(to_string(v)), v);
  EXPECT_FALSE(verdict_from_string("MAYBE").has_value());
}
