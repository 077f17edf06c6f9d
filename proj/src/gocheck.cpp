#include "gospace/gocheck.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "gospace/error.hpp"

namespace gospace {

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::GO: return "GO";
    case Verdict::NOT_GO: return "NOT_GO";
    case Verdict::NR: return "NR";
    case Verdict::NOT_NR: return "NOT_NR";
    case Verdict::PASS: return "PASS";
    case Verdict::FAIL: return "FAIL";
    case Verdict::INCONCLUSIVE: return "INCONCLUSIVE";
  }
  return "INCONCLUSIVE";
}

std::optional<Verdict> verdict_from_string(std::string_view s) {
  for (Verdict v : {Verdict::GO, Verdict::NOT_GO, Verdict::NR, Verdict::NOT_NR, Verdict::PASS, Verdict::FAIL,
                    Verdict::INCONCLUSIVE}) {
    if (to_string(v) == s) return v;
  }
  return std::nullopt;
}

namespace {

void check_dims(const HomogeneousSpace& space, const Decomposition& dec, const Vec& u) {
  if (dec.dim_m() != space.dim_m() || u.size() != space.dim_m()) {
    throw Error(ErrorCode::DimensionMismatch, "vector or decomposition does not match dim m");
  }
}

double go_denominator(const Vec& rhs, const Vec& u) {
  return std::max(rhs.norm(), u.squaredNorm());
}

// Least squares of [w, v] (w in h) against a full adapted-coordinate target.
// The h-part of the target cannot be matched and stays in the residual.
struct HSolve {
  Vec w;
  Vec residual;  // full adapted coordinates
};

double noise_floor(const HomogeneousSpace& space, double scale) { return h_action_noise_floor(space, scale); }

HSolve solve_h_action(const HomogeneousSpace& space, const Vec& v, const Vec& target) {
  const Eigen::Index dh = space.dim_h();
  const Eigen::Index dm = space.dim_m();
  HSolve out;
  out.residual = -target;
  if (dh == 0) {
    out.w = Vec(0);
    return out;
  }
  const LeastSquares ls = lstsq(space.h_action(v), target.tail(dm), -1.0, noise_floor(space, v.norm()));
  out.w = ls.x;
  out.residual.tail(dm) = ls.residual;
  return out;
}

}  // namespace

double nr_residual(const HomogeneousSpace& space, const Decomposition& dec, const LFunction& l, const Vec& u) {
  check_dims(space, dec, u);
  const Vec au = a_u_of_u(l, dec, u);
  const double denom = u.norm() * au.norm();
  if (denom == 0.0) throw Error(ErrorCode::ZeroVector, "NR residual at u = 0");
  return space.bracket_m(u, au).norm() / denom;
}

CheckReport nr_check(const HomogeneousSpace& space, const Decomposition& dec, const LFunction& l, int samples,
                     std::uint64_t seed, double tol, Execution exec) {
  const auto us = sampling_plan(dec, samples, seed);
  const auto results = evaluate_nr(space, dec, l, us, exec);
  CheckReport rep;
  rep.tol = tol;
  rep.seed = seed;
  rep.samples = samples;
  rep.witness = Vec::Zero(dec.dim_m());
  for (std::size_t i = 0; i < us.size(); ++i) {
    const auto& r = results[i];
    rep.per_sample.push_back({us[i], r.residual, 0.0, r.skipped});
    if (r.skipped) {
      ++rep.skipped;
      continue;
    }
    if (r.residual > rep.max_residual || rep.witness.isZero(0.0)) {
      rep.max_residual = r.residual;
      rep.witness = us[i];
      rep.witness_residual = r.residual;
    }
  }
  rep.verdict = rep.max_residual <= tol ? Verdict::NR : Verdict::NOT_NR;
  return rep;
}

OperatorResult go_check_operator(const HomogeneousSpace& space, const Decomposition& dec, const LFunction& l,
                                 const Vec& u) {
  check_dims(space, dec, u);
  const Vec au = a_u_of_u(l, dec, u);
  const Vec rhs = space.bracket_m(au, u);
  const HSolve sol = solve_h_action(space, au, rhs);
  return {sol.residual.norm() / go_denominator(rhs, u), sol.w};
}

double go_check_spray(const HomogeneousSpace& space, const Decomposition& dec, const LFunction& l, const Vec& u) {
  check_dims(space, dec, u);
  const Mat a = fundamental_tensor(l, dec, u);
  const Vec eta = spray_vector(space, dec, l, u);
  const Vec target = a * eta;
  // same denominator as the operator criterion, computed independently
  const Vec rhs = space.bracket_m(a_u_of_u(l, dec, u), u);
  if (space.dim_h() == 0) return target.norm() / go_denominator(rhs, u);
  const LeastSquares ls = lstsq(a * space.h_action(u), target, -1.0, noise_floor(space, (a * u).norm()));
  return ls.residual.norm() / go_denominator(rhs, u);
}

CheckReport aggregate_go(const std::vector<Vec>& us, const std::vector<GoSample>& results, double tol,
                         std::uint64_t seed) {
  CheckReport rep;
  rep.tol = tol;
  rep.seed = seed;
  rep.samples = static_cast<int>(us.size());
  rep.witness = us.empty() ? Vec() : Vec::Zero(us.front().size());
  const double fail = kFailFactor * tol;
  // 0: pass, 1: gray zone, 2: fail
  auto cls = [&](double r) { return r <= tol ? 0 : (r > fail ? 2 : 1); };
  bool all_pass = true;
  bool any_fail = false;
  bool have_witness = false;
  for (std::size_t i = 0; i < us.size(); ++i) {
    const auto& r = results[i];
    rep.per_sample.push_back({us[i], r.op_residual, r.spray_residual, r.skipped});
    if (r.skipped) {
      ++rep.skipped;
      continue;
    }
    rep.max_residual_spray = std::max(rep.max_residual_spray, r.spray_residual);
    rep.max_discrepancy = std::max(rep.max_discrepancy, std::abs(r.op_residual - r.spray_residual));
    const int co = cls(r.op_residual);
    const int cs = cls(r.spray_residual);
    if (co != cs) ++rep.disagreements;
    if (co + cs == 2 && co != 1) rep.consistency_flag = true;
    if (co != 0 || cs != 0) all_pass = false;
    if (co == 2 && cs == 2) any_fail = true;
    if (!have_witness || r.op_residual > rep.max_residual) {
      rep.max_residual = r.op_residual;
      rep.witness = us[i];
      rep.witness_residual = r.op_residual;
      rep.witness_residual_spray = r.spray_residual;
      have_witness = true;
    }
  }
  if (any_fail) {
    rep.verdict = Verdict::NOT_GO;
  } else if (all_pass && have_witness) {
    rep.verdict = Verdict::GO;
  } else {
    rep.verdict = Verdict::INCONCLUSIVE;
  }
  return rep;
}

CheckReport go_verdict(const HomogeneousSpace& space, const Decomposition& dec, const LFunction& l, int samples,
                       std::uint64_t seed, double tol, Execution exec) {
  if (l.arity() != static_cast<Eigen::Index>(dec.size())) {
    throw Error(ErrorCode::DimensionMismatch, "metric arity differs from the number of summands");
  }
  const auto us = sampling_plan(dec, samples, seed);
  return aggregate_go(us, evaluate_go(space, dec, l, us, exec), tol, seed);
}

PhiCheckResult two_summand_phi_check(const HomogeneousSpace& space, const Decomposition& dec, const LFunction& l,
                                     const Vec& u1_in, const Vec& u2_in) {
  if (dec.size() != 2 || l.kind() != LKind::Phi) {
    throw Error(ErrorCode::InvalidArgument, "two_summand_phi_check needs two summands and a phi metric");
  }
  check_dims(space, dec, u1_in);
  check_dims(space, dec, u2_in);
  const Vec u1 = dec.project(u1_in, 0);
  const Vec u2 = dec.project(u2_in, 1);
  const double n1 = u1.squaredNorm();
  const double n2 = u2.squaredNorm();
  if (n1 == 0.0 || n2 == 0.0) throw Error(ErrorCode::ZeroVector, "both components must be nonzero");
  const Polynomial& phi = l.phi();
  const Polynomial dphi = phi.derivative();
  PhiCheckResult out;
  const double t = std::sqrt(n2 / (n1 + n2));
  const double f = phi(t);
  const double df = dphi(t);
  out.theta = t;
  out.coeff1 = f - t * df;
  out.coeff2 = f - (t - 1.0 / t) * df;
  out.lhs = -df / t;

  const Vec u = u1 + u2;
  const Vec b12 = space.bracket_m(u1, u2);
  const Vec rhs = out.lhs * b12;
  const Eigen::Index dm = space.dim_m();
  Vec res = -rhs;
  out.u_prime = Vec(space.dim_h());
  if (space.dim_h() > 0) {
    const Mat sys = out.coeff1 * space.h_action(u1) + out.coeff2 * space.h_action(u2);
    const Vec v = out.coeff1 * u1 + out.coeff2 * u2;
    const LeastSquares ls = lstsq(sys, rhs.tail(dm), -1.0, noise_floor(space, v.norm()));
    out.u_prime = ls.x;
    res.tail(dm) = ls.residual;
  }
  // multiplying the system by phi turns it into the operator system
  const double denom = std::max(std::abs(f * out.lhs) * b12.norm(), u.squaredNorm());
  out.residual = std::abs(f) * res.norm() / denom;
  return out;
}

CentralizerCondition centralizer_condition_check(const HomogeneousSpace& space, const Decomposition& dec,
                                                 const Vec& x, const Vec& y, double tol) {
  check_dims(space, dec, x);
  check_dims(space, dec, y);
  const Eigen::Index dh = space.dim_h();
  CentralizerCondition out;
  out.z_x = Vec::Zero(dh);
  out.z_y = Vec::Zero(dh);
  if (x.isZero(0.0) || y.isZero(0.0)) {
    out.feasible = true;
    out.unique = true;
    return out;
  }
  const Vec rhs = space.bracket_m(x, y);
  const double denom = std::max(rhs.norm(), x.norm() * y.norm());
  if (dh == 0) {
    out.residual = rhs.norm() / denom;
    out.feasible = out.residual <= tol;
    out.unique = true;
    return out;
  }
  const TildeCentralizer tc = tilde_centralizer(space, x + y);
  const Mat sx = intersect(tc.tilde, centralizer_in_h(space, x));
  const Mat sy = intersect(tc.tilde, centralizer_in_h(space, y));
  out.dim_x_space = sx.rows();
  out.dim_y_space = sy.rows();
  const Eigen::Index dm = space.dim_m();
  // unknowns: coefficients of Z_Y in sy, then of Z_X in sx
  Mat sys(dm, sy.rows() + sx.rows());
  if (sy.rows() > 0) sys.leftCols(sy.rows()) = space.h_action(x) * sy.transpose();
  if (sx.rows() > 0) sys.rightCols(sx.rows()) = space.h_action(y) * sx.transpose();
  Vec res = -rhs;
  if (sys.cols() > 0) {
    const LeastSquares ls = lstsq(sys, rhs.tail(dm), -1.0, noise_floor(space, x.norm() + y.norm()));
    res.tail(dm) = ls.residual;
    out.z_y = sy.transpose() * ls.x.head(sy.rows());
    out.z_x = sx.transpose() * ls.x.tail(sx.rows());
    out.unique = ls.rank == sys.cols();
  } else {
    out.unique = true;
  }
  out.residual = res.norm() / denom;
  out.feasible = out.residual <= tol;
  return out;
}

CheckReport riemann_two_param_check(const HomogeneousSpace& space, const Decomposition& dec, double lambda,
                                    double mu, int samples, std::uint64_t seed, double tol, Execution exec) {
  if (dec.size() != 2) throw Error(ErrorCode::InvalidArgument, "riemann_two_param_check needs two summands");
  return go_verdict(space, dec, l_linear({lambda, mu}), samples, seed, tol, exec);
}

WallachResult wallach_system_check(const HomogeneousSpace& space, const Decomposition& dec, const LFunction& l,
                                   const Vec& u) {
  if (dec.size() != 3) throw Error(ErrorCode::InvalidArgument, "wallach_system_check needs three summands");
  check_dims(space, dec, u);
  const Vec theta = dec.thetas(u);
  if (!l.differentiable_at(theta)) {
    throw Error(ErrorCode::BoundaryNondifferentiable, "L is not differentiable on this face of the orthant");
  }
  const Vec g = l.gradient(theta);
  std::array<Vec, 3> p;
  for (std::size_t a = 0; a < 3; ++a) p[a] = dec.project(u, a);

  // sum_i L_i [u', u_i] = sum_{i<j} (L_i - L_j) [u_i, u_j]
  const Vec rhs = (g(0) - g(1)) * space.bracket_m(p[0], p[1]) + (g(0) - g(2)) * space.bracket_m(p[0], p[2]) +
                  (g(1) - g(2)) * space.bracket_m(p[1], p[2]);
  const Eigen::Index dm = space.dim_m();
  Vec res = -rhs;
  WallachResult out;
  out.u_prime = Vec(space.dim_h());
  if (space.dim_h() > 0) {
    Mat sys = Mat::Zero(dm, space.dim_h());
    Vec v = Vec::Zero(dm);
    for (std::size_t a = 0; a < 3; ++a) {
      sys += g(static_cast<Eigen::Index>(a)) * space.h_action(p[a]);
      v += g(static_cast<Eigen::Index>(a)) * p[a];
    }
    const LeastSquares ls = lstsq(sys, rhs.tail(dm), -1.0, noise_floor(space, v.norm()));
    out.u_prime = ls.x;
    res.tail(dm) = ls.residual;
  }
  const double denom = go_denominator(rhs, u);
  const Vec rm = res.tail(dm);
  for (std::size_t a = 0; a < 3; ++a) out.blocks[a] = dec.project(rm, a).norm() / denom;
  out.h_part = res.head(space.dim_h()).norm() / denom;
  out.total = res.norm() / denom;
  return out;
}

}  // namespace gospace
