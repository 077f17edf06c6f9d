#include "gospace/suites.hpp"

#include <cmath>
#include <cstdio>
#include <random>

#include "gospace/catalog.hpp"
#include "gospace/error.hpp"
#include "gospace/gocheck.hpp"
#include "gospace/liealg.hpp"
#include "gospace/random.hpp"

namespace gospace {

bool SuiteReport::passed() const {
  for (const auto& item : items)
    if (!item.passed) return false;
  return !items.empty();
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {"thm1-converse", "thm2-wallach", "cor-wallach-normal",
                                                 "type1-nr",      "crossval",     "invariants"};
  return names;
}

std::vector<std::string> default_battery(std::size_t s) {
  if (s == 2) return {"linear:1,1", "linear:1,2", "linear:3,0.5", "phi:1,0,0.25", "phi:1,0.1"};
  if (s == 3) return {"linear:1,1,1", "linear:1,1,2", "linear:1,2,3", "pert3:1,1,1,0.5"};
  std::string eq = "linear:1";
  std::string ne = "linear:1";
  for (std::size_t i = 1; i < s; ++i) {
    eq += ",1";
    ne += "," + std::to_string(i + 1);
  }
  return {eq, ne};
}

namespace {

// Thresholds of the replay items that are not the user tolerance.
constexpr double kWitnessFloor = 1e-3;     // NOT_GO / NOT_NR witnesses must exceed this
constexpr double kAlgebraTol = 1e-10;      // Jacobi, Ad-invariance, bracket containment
constexpr double kDecompositionTol = 1e-9;
constexpr double kNrTol = 1e-10;           // naturally reductive products
constexpr double kDiscrepancyTol = 1e-6;   // operator vs spray residuals
constexpr double kReassemblyTol = 1e-10;   // Wallach block residuals vs operator residual
constexpr double kNonzeroBracket = 1e-6;
constexpr int kCrossvalTriples = 1000;
constexpr int kCentralizerPairs = 100;
constexpr int kUnequalPairs = 5;

std::string sci(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", x);
  return buf;
}

class Builder {
 public:
  explicit Builder(SuiteReport& r) : r_(r) {}
  void add(std::string name, bool ok, std::string detail) {
    r_.items.push_back({std::move(name), ok, std::move(detail)});
  }

 private:
  SuiteReport& r_;
};

std::vector<std::string> entries_with_tag(std::string_view tag) {
  std::vector<std::string> ids;
  for (const auto& e : list_catalog()) {
    for (const auto& t : e.tags)
      if (t == tag) {
        ids.push_back(e.id);
        break;
      }
  }
  return ids;
}

bool non_constant_phi(const LFunction& l) {
  if (l.kind() != LKind::Phi) return false;
  const auto& c = l.phi().coeffs();
  for (std::size_t i = 1; i < c.size(); ++i)
    if (c[i] != 0.0) return true;
  return false;
}

std::string go_detail(const CheckReport& r) {
  return std::string(to_string(r.verdict)) + " op=" + sci(r.max_residual) + " spray=" + sci(r.max_residual_spray) +
         " witness=" + sci(r.witness_residual) + "/" + sci(r.witness_residual_spray);
}

bool not_go_with_witness(const CheckReport& r) {
  return r.verdict == Verdict::NOT_GO && r.witness_residual > kWitnessFloor && r.witness_residual_spray > kWitnessFloor;
}

// Largest column norm of the part of `cols` (full adapted coordinates) that
// lies outside `allowed` (m-coordinate projector; the h-block is allowed when
// keep_h is set).
double outside(const HomogeneousSpace& space, const Mat& cols, const Mat& allowed, bool keep_h) {
  const Eigen::Index dh = space.dim_h();
  double worst = 0.0;
  for (Eigen::Index c = 0; c < cols.cols(); ++c) {
    Vec m = cols.col(c).tail(space.dim_m());
    m -= allowed * m;
    double r = m.squaredNorm();
    if (!keep_h) r += cols.col(c).head(dh).squaredNorm();
    worst = std::max(worst, std::sqrt(r));
  }
  return worst;
}

std::vector<std::pair<double, double>> unequal_pairs(std::uint64_t seed) {
  Rng rng(seed);
  std::uniform_real_distribution<double> expo(-1.0, 1.0);
  std::vector<std::pair<double, double>> out;
  while (static_cast<int>(out.size()) < kUnequalPairs) {
    const double a = std::pow(10.0, expo(rng));
    const double b = std::pow(10.0, expo(rng));
    if (std::abs(std::log10(a / b)) > 0.05) out.emplace_back(a, b);
  }
  return out;
}

// [X, Y] pairs from the two summands.
template <class F>
void for_pairs(const Decomposition& dec, std::uint64_t seed, int n, F&& f) {
  Rng rng(seed);
  for (int i = 0; i < n; ++i) {
    const Vec x = dec.summand(0).transpose() * unit_vector(rng, dec.summand(0).rows());
    const Vec y = dec.summand(1).transpose() * unit_vector(rng, dec.summand(1).rows());
    f(x, y);
  }
}

void structural_items(Builder& b, const CatalogSpace& cs) {
  const auto& sp = cs.space;
  const auto& dec = cs.decomposition;
  const std::string& id = cs.info.id;
  const std::size_t s = dec.size();
  const Mat none = Mat::Zero(sp.dim_m(), sp.dim_m());
  double in_h = 0.0;
  for (std::size_t i = 0; i < s; ++i) in_h = std::max(in_h, outside(sp, summand_brackets(sp, dec, i, i), none, true));
  b.add(id + " [m_i,m_i] in h", in_h <= kAlgebraTol, "residual=" + sci(in_h));

  const bool type1 = cs.info.has_tag(tags::kWallachI);
  if (s != 3) return;
  double worst = 0.0;
  bool full = true;
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = i + 1; j < 3; ++j) {
      const std::size_t k = 3 - i - j;
      const Mat br = summand_brackets(sp, dec, i, j);
      if (type1) {
        worst = std::max(worst, outside(sp, br, none, false));
      } else {
        worst = std::max(worst, outside(sp, br, dec.projector(k), false));
        const Mat proj = dec.summand(k) * br.bottomRows(sp.dim_m());
        full = full && numerical_rank(proj, 1e-8) == dec.summand(k).rows();
      }
    }
  }
  if (type1) {
    b.add(id + " [m_i,m_j] = 0", worst <= kAlgebraTol, "residual=" + sci(worst));
  } else {
    b.add(id + " [m_i,m_j] = m_k", worst <= kAlgebraTol && full,
          "containment=" + sci(worst) + (full ? " full rank" : " rank deficient"));
  }
}

void thm1_converse(Builder& b, const SuiteOptions& o) {
  for (const auto& id : entries_with_tag(tags::kGoTriple)) {
    const CatalogSpace cs = make_space(id);
    const auto& sp = cs.space;
    const auto& dec = cs.decomposition;
    for (const auto& m : default_battery(2)) {
      const LFunction l = parse_metric(m);
      const CheckReport go = go_verdict(sp, dec, l, o.samples, o.seed, o.tol);
      b.add(id + " " + m + " GO", go.verdict == Verdict::GO && go.max_residual <= o.tol, go_detail(go));
      if (non_constant_phi(l)) {
        const CheckReport nr = nr_check(sp, dec, l, o.samples, o.seed, o.tol);
        b.add(id + " " + m + " NOT_NR", nr.verdict == Verdict::NOT_NR && nr.witness_residual > kWitnessFloor,
              std::string(to_string(nr.verdict)) + " witness=" + sci(nr.witness_residual));
      }
    }
    int feasible = 0;
    int unique = 0;
    double worst = 0.0;
    for_pairs(dec, o.seed, kCentralizerPairs, [&](const Vec& x, const Vec& y) {
      const auto r = centralizer_condition_check(sp, dec, x, y, o.tol);
      feasible += r.feasible;
      unique += r.unique;
      worst = std::max(worst, r.residual);
    });
    b.add(id + " centralizer condition", feasible == kCentralizerPairs && unique == kCentralizerPairs,
          std::to_string(feasible) + " feasible, " + std::to_string(unique) + " unique, max residual=" + sci(worst));

    const CheckReport base = riemann_two_param_check(sp, dec, 1.0, 2.0, o.samples, o.seed, o.tol);
    bool all = base.verdict == Verdict::GO;
    double max_r = base.max_residual;
    for (const auto& [lam, mu] : unequal_pairs(o.seed)) {
      const CheckReport r = riemann_two_param_check(sp, dec, lam, mu, o.samples, o.seed, o.tol);
      all = all && r.verdict == Verdict::GO;
      max_r = std::max(max_r, r.max_residual);
    }
    b.add(id + " unequal (lambda, mu)", all, "max residual=" + sci(max_r));
  }

  for (const auto& id : entries_with_tag(tags::kControl)) {
    const CatalogSpace cs = make_space(id);
    if (cs.decomposition.size() != 2) continue;
    const auto& sp = cs.space;
    const auto& dec = cs.decomposition;
    bool all_fail = true;
    double min_w = INFINITY;
    std::vector<std::pair<double, double>> pairs = unequal_pairs(o.seed);
    pairs.emplace_back(1.0, 2.0);
    for (const auto& [lam, mu] : pairs) {
      const CheckReport r = riemann_two_param_check(sp, dec, lam, mu, o.samples, o.seed, o.tol);
      all_fail = all_fail && not_go_with_witness(r);
      min_w = std::min(min_w, r.witness_residual);
    }
    b.add(id + " control NOT_GO for unequal (lambda, mu)", all_fail, "smallest witness=" + sci(min_w));
    const CheckReport eq = riemann_two_param_check(sp, dec, 2.5, 2.5, o.samples, o.seed, o.tol);
    b.add(id + " control GO for lambda = mu", eq.verdict == Verdict::GO, go_detail(eq));
    int infeasible = 0;
    for_pairs(dec, o.seed, kCentralizerPairs, [&](const Vec& x, const Vec& y) {
      infeasible += !centralizer_condition_check(sp, dec, x, y, o.tol).feasible;
    });
    b.add(id + " control violates centralizer condition", infeasible > 0,
          std::to_string(infeasible) + " infeasible pairs");
  }
}

void thm2_wallach(Builder& b, const SuiteOptions& o) {
  std::vector<std::string> ids = entries_with_tag(tags::kWallachII);
  for (const auto& id : entries_with_tag(tags::kWallachIII)) ids.push_back(id);
  for (const auto& id : ids) {
    const CatalogSpace cs = make_space(id);
    structural_items(b, cs);
    for (const auto& m : default_battery(3)) {
      const LFunction l = parse_metric(m);
      const CheckReport go = go_verdict(cs.space, cs.decomposition, l, o.samples, o.seed, o.tol);
      if (l.is_normal()) {
        b.add(id + " " + m + " GO", go.verdict == Verdict::GO, go_detail(go));
      } else {
        b.add(id + " " + m + " NOT_GO", not_go_with_witness(go), go_detail(go));
      }
    }
  }
}

void cor_wallach_normal(Builder& b, const SuiteOptions& o) {
  for (const std::string id : {"su3/t2", "sp3/sp1^3"}) {
    const CatalogSpace cs = make_space(id);
    const auto& sp = cs.space;
    const auto& dec = cs.decomposition;
    for (const auto& m : default_battery(3)) {
      const LFunction l = parse_metric(m);
      const CheckReport go = go_verdict(sp, dec, l, o.samples, o.seed, o.tol);
      const Verdict want = l.is_normal() ? Verdict::GO : Verdict::NOT_GO;
      b.add(id + " " + m + " " + std::string(to_string(want)), go.verdict == want, go_detail(go));

      // three-block system against the operator residual
      double worst = 0.0;
      for (const Vec& u : sampling_plan(dec, 20, o.seed)) {
        if (!l.differentiable_at(dec.thetas(u))) continue;
        const WallachResult w = wallach_system_check(sp, dec, l, u);
        const double rss = std::sqrt(w.blocks[0] * w.blocks[0] + w.blocks[1] * w.blocks[1] +
                                     w.blocks[2] * w.blocks[2] + w.h_part * w.h_part);
        worst = std::max(worst, std::abs(rss - go_check_operator(sp, dec, l, u).residual));
      }
      b.add(id + " " + m + " block residuals", worst <= kReassemblyTol, "max mismatch=" + sci(worst));
    }
  }
}

void type1_nr(Builder& b, const SuiteOptions& o) {
  for (const auto& id : entries_with_tag(tags::kWallachI)) {
    const CatalogSpace cs = make_space(id);
    structural_items(b, cs);
    for (const auto& m : default_battery(cs.decomposition.size())) {
      const LFunction l = parse_metric(m);
      const CheckReport nr = nr_check(cs.space, cs.decomposition, l, o.samples, o.seed, kNrTol);
      b.add(id + " " + m + " NR", nr.verdict == Verdict::NR,
            std::string(to_string(nr.verdict)) + " max residual=" + sci(nr.max_residual));
    }
  }
}

void crossval(Builder& b, const SuiteOptions& o) {
  long triples = 0;
  long disagreements = 0;
  double discrepancy = 0.0;
  for (const auto& e : list_catalog()) {
    const CatalogSpace cs = make_space(e.id);
    long here = 0;
    long dis = 0;
    double disc = 0.0;
    for (const auto& m : default_battery(cs.decomposition.size())) {
      const CheckReport r = go_verdict(cs.space, cs.decomposition, parse_metric(m), o.samples, o.seed, o.tol);
      here += r.samples - r.skipped;
      dis += r.disagreements;
      disc = std::max(disc, r.max_discrepancy);
    }
    b.add(e.id + " operator vs spray", dis == 0 && disc <= kDiscrepancyTol,
          std::to_string(here) + " samples, " + std::to_string(dis) + " disagreements, max discrepancy=" + sci(disc));
    triples += here;
    disagreements += dis;
    discrepancy = std::max(discrepancy, disc);
  }
  b.add("total triples", triples >= kCrossvalTriples && disagreements == 0,
        std::to_string(triples) + " triples, agreement " +
            (triples > 0 ? sci(100.0 * static_cast<double>(triples - disagreements) / static_cast<double>(triples))
                         : std::string("n/a")) +
            "%");
}

// Central-difference Hessian of F^2 / 2.
Mat fd_hessian(const LFunction& l, const Decomposition& dec, const Vec& y, double h) {
  const Eigen::Index n = y.size();
  auto f = [&](const Vec& v) { return 0.5 * l.value(dec.thetas(v)); };
  Mat out(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i; j < n; ++j) {
      Vec pp = y, pm = y, mp = y, mm = y;
      pp(i) += h; pp(j) += h;
      pm(i) += h; pm(j) -= h;
      mp(i) -= h; mp(j) += h;
      mm(i) -= h; mm(j) -= h;
      out(i, j) = out(j, i) = (f(pp) - f(pm) - f(mp) + f(mm)) / (4 * h * h);
    }
  }
  return out;
}

void invariants(Builder& b, const SuiteOptions& o) {
  for (const auto& e : list_catalog()) {
    const CatalogSpace cs = make_space(e.id);
    const LieAlgebra& g = cs.space.g();
    const double jac = jacobi_residual(g, 100, o.seed);
    const double adinv = ad_invariance_residual(g, 100, o.seed);
    const double qmin = Eigen::SelfAdjointEigenSolver<Mat>(g.q_form()).eigenvalues().minCoeff();
    b.add(e.id + " algebra", jac <= kAlgebraTol && adinv <= kAlgebraTol && qmin > 0.0,
          "jacobi=" + sci(jac) + " ad-invariance=" + sci(adinv) + " min eig Q=" + sci(qmin));
    const DecompositionCheck dc = check_decomposition(cs.space, cs.decomposition);
    const double worst = std::max({dc.orthogonality, dc.completeness, dc.invariance});
    b.add(e.id + " decomposition", worst <= kDecompositionTol, "max residual=" + sci(worst));
  }

  struct Case {
    const char* space;
    const char* metrics[3];
  };
  const Case cases[] = {{"so5/u2", {"phi:1,0,0.25", "phi:1,0.1", "linear:1,2"}},
                        {"su3/t2", {"pert3:1,1,1,0.5", "linear:1,2,3", "linear:1,1,2"}},
                        {"ledger-obata/su2", {"pert3:1,1,1,0.5", "linear:1,1,2", "linear:1,1,1"}}};
  for (const auto& c : cases) {
    const CatalogSpace cs = make_space(c.space);
    const auto& sp = cs.space;
    const auto& dec = cs.decomposition;
    for (const char* m : c.metrics) {
      const LFunction l = parse_metric(m);
      Rng rng(o.seed);
      double hess = 0.0;
      double au = 0.0;
      double equiv = 0.0;
      for (int i = 0; i < 50; ++i) {
        const Vec y = unit_vector(rng, sp.dim_m());
        const Mat a = fundamental_tensor(l, dec, y);
        hess = std::max(hess, (a - fd_hessian(l, dec, y, 1e-4)).cwiseAbs().maxCoeff() / a.cwiseAbs().maxCoeff());
        au = std::max(au, (a_u_of_u(l, dec, y) - a * y).norm() / (a * y).norm());
        for (Eigen::Index w = 0; w < sp.dim_h(); ++w) {
          const Mat& adw = sp.ad_h_on_m(w);
          equiv = std::max(equiv, (a * (adw * y) - adw * (a * y)).norm());
        }
      }
      b.add(std::string(c.space) + " " + m + " operator",
            hess <= 1e-5 && au <= 1e-9 && equiv <= 1e-8,
            "hessian=" + sci(hess) + " A_u(u)=" + sci(au) + " equivariance=" + sci(equiv));
    }
  }
}

}  // namespace

SuiteReport run_suite(std::string_view name, const SuiteOptions& options) {
  SuiteReport report;
  report.suite = std::string(name);
  Builder b(report);
  if (name == "thm1-converse") {
    thm1_converse(b, options);
  } else if (name == "thm2-wallach") {
    thm2_wallach(b, options);
  } else if (name == "cor-wallach-normal") {
    cor_wallach_normal(b, options);
  } else if (name == "type1-nr") {
    type1_nr(b, options);
  } else if (name == "crossval") {
    crossval(b, options);
  } else if (name == "invariants") {
    invariants(b, options);
  } else {
    throw Error(ErrorCode::UnknownSpec, "unknown suite '" + std::string(name) + "'");
  }
  return report;
}

}  // namespace gospace
