#pragma once

// Geodesic-orbit, natural-reductivity and centralizer criteria for standard
// homogeneous metrics, on top of the metric-operator machinery.
//
// All residuals are relative and 0-homogeneous in u. The two g.o. criteria
// share the denominator max(||[A_u u, u]||, ||u||^2).

#include <array>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "gospace/sampling.hpp"

namespace gospace {

enum class Verdict { GO, NOT_GO, NR, NOT_NR, PASS, FAIL, INCONCLUSIVE };

std::string_view to_string(Verdict v);
std::optional<Verdict> verdict_from_string(std::string_view s);

/// NOT_GO needs a residual above kFailFactor * tol under both criteria.
inline constexpr double kFailFactor = 1e3;

struct SampleRecord {
  Vec u;
  double residual = 0.0;
  double residual_spray = 0.0;
  bool skipped = false;
};

struct CheckReport {
  Verdict verdict = Verdict::INCONCLUSIVE;
  int samples = 0;
  int skipped = 0;
  double max_residual = 0.0;
  double max_residual_spray = 0.0;  // go reports only
  double max_discrepancy = 0.0;     // max |operator - spray| (go reports only)
  int disagreements = 0;            // samples where the two criteria classify differently
  bool consistency_flag = false;    // a sample passes one criterion and fails the other
  Vec witness;                      // worst sample by (operator) residual
  double witness_residual = 0.0;
  double witness_residual_spray = 0.0;  // go reports only
  double tol = 0.0;
  std::uint64_t seed = 0;
  std::vector<SampleRecord> per_sample;
};

/// [u, A_u(u)] / (||u|| ||A_u(u)||).
double nr_residual(const HomogeneousSpace& space, const Decomposition& dec, const LFunction& l,
                   const Vec& u);

CheckReport nr_check(const HomogeneousSpace& space, const Decomposition& dec, const LFunction& l,
                     int samples, std::uint64_t seed, double tol,
                     Execution exec = Execution::Parallel);

struct OperatorResult {
  double residual = 0.0;
  Vec u_prime;  // minimal-norm element of h, h-coordinates
};

/// Least-squares solve of [u', A_u(u)] = [A_u(u), u] over u' in h.
OperatorResult go_check_operator(const HomogeneousSpace& space, const Decomposition& dec,
                                 const LFunction& l, const Vec& u);

/// Distance of the spray vector eta(u) from span{[w, u] : w in h}, measured
/// after applying A_u (which maps that span onto span{[w, A_u u]}).
double go_check_spray(const HomogeneousSpace& space, const Decomposition& dec, const LFunction& l,
                      const Vec& u);

/// Verdict policy: GO iff every sample is <= tol under both criteria;
/// NOT_GO if some sample exceeds kFailFactor * tol under both; otherwise
/// INCONCLUSIVE.
CheckReport go_verdict(const HomogeneousSpace& space, const Decomposition& dec, const LFunction& l,
                       int samples, std::uint64_t seed, double tol,
                       Execution exec = Execution::Parallel);

/// Verdict from per-sample residuals (exposed for testing the policy).
CheckReport aggregate_go(const std::vector<Vec>& us, const std::vector<GoSample>& results, double tol,
                         std::uint64_t seed);

struct PhiCheckResult {
  double residual = 0.0;
  double theta = 0.0;
  double coeff1 = 0.0;  // phi - theta phi'
  double coeff2 = 0.0;  // phi - (theta - 1/theta) phi'
  double lhs = 0.0;     // -phi'/theta
  Vec u_prime;
};

/// Two-summand g.o. equation written through phi, for u_1 in m_1 and u_2 in
/// m_2 (both nonzero, m-coordinates). Normalized like go_check_operator.
PhiCheckResult two_summand_phi_check(const HomogeneousSpace& space, const Decomposition& dec,
                                     const LFunction& l, const Vec& u1, const Vec& u2);

struct CentralizerCondition {
  bool feasible = false;
  bool unique = false;
  double residual = 0.0;
  Vec z_x;  // h-coordinates
  Vec z_y;
  Eigen::Index dim_x_space = 0;  // dim (tilde C(X+Y) ∩ C(X))
  Eigen::Index dim_y_space = 0;
};

/// Solves [X, Y] = [Z_Y, X] + [Z_X, Y] with Z_X in tilde C_h(X+Y) ∩ C_h(X)
/// and Z_Y in tilde C_h(X+Y) ∩ C_h(Y).
CentralizerCondition centralizer_condition_check(const HomogeneousSpace& space, const Decomposition& dec,
                                                 const Vec& x, const Vec& y, double tol);

CheckReport riemann_two_param_check(const HomogeneousSpace& space, const Decomposition& dec,
                                    double lambda, double mu, int samples, std::uint64_t seed,
                                    double tol, Execution exec = Execution::Parallel);

struct WallachResult {
  std::array<double, 3> blocks{};  // m_1, m_2, m_3 components of the residual
  double h_part = 0.0;
  double total = 0.0;
  Vec u_prime;
};

/// Three-summand g.o. system solved jointly for u'; block residuals share the
/// go_check_operator normalization.
WallachResult wallach_system_check(const HomogeneousSpace& space, const Decomposition& dec,
                                   const LFunction& l, const Vec& u);

}  // namespace gospace
