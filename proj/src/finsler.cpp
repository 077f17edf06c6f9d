#include "gospace/finsler.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <sstream>

#include "gospace/error.hpp"
#include "gospace/random.hpp"

namespace gospace {

// ---------------------------------------------------------------- Polynomial

Polynomial::Polynomial(std::vector<double> coeffs) : coeffs_(std::move(coeffs)) {
  while (coeffs_.size() > 1 && coeffs_.back() == 0.0) coeffs_.pop_back();
}

double Polynomial::operator()(double t) const {
  double acc = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * t + *it;
  return acc;
}

Polynomial Polynomial::derivative() const {
  if (coeffs_.size() <= 1) return Polynomial({0.0});
  std::vector<double> d(coeffs_.size() - 1);
  for (std::size_t k = 1; k < coeffs_.size(); ++k) d[k - 1] = static_cast<double>(k) * coeffs_[k];
  return Polynomial(std::move(d));
}

Polynomial Polynomial::divide_by_t() const {
  if (!vanishes_at_zero()) throw Error(ErrorCode::InvalidArgument, "divide_by_t: p(0) != 0");
  if (coeffs_.size() <= 1) return Polynomial({0.0});
  return Polynomial(std::vector<double>(coeffs_.begin() + 1, coeffs_.end()));
}

PhiProfile::Screen PhiProfile::screen(int grid) const {
  const Polynomial dphi = phi.derivative();
  Screen s{std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity(),
           std::numeric_limits<double>::infinity(), 0.0};
  for (int i = 0; i <= grid; ++i) {
    const double t = static_cast<double>(i) / grid;
    const double p = phi(t);
    const double dp = dphi(t);
    if (p < s.min_phi) {
      s.min_phi = p;
      s.worst_t = t;
    }
    if (i == 0 || i == grid) continue;
    s.min_coeff1 = std::min(s.min_coeff1, p - t * dp);
    s.min_coeff2 = std::min(s.min_coeff2, p - (t - 1.0 / t) * dp);
  }
  return s;
}

std::string_view to_string(LKind kind) {
  switch (kind) {
    case LKind::Linear: return "linear";
    case LKind::Phi: return "phi";
    case LKind::PerturbedLinear: return "perturbed-linear";
    case LKind::User: return "user";
  }
  return "?";
}

// ----------------------------------------------------------------- LFunction

namespace {

void check_theta(const Vec& theta, Eigen::Index arity) {
  if (theta.size() != arity) {
    throw Error(ErrorCode::DimensionMismatch,
                "L expects " + std::to_string(arity) + " arguments, got " + std::to_string(theta.size()));
  }
  if ((theta.array() < 0.0).any()) throw Error(ErrorCode::InvalidArgument, "theta outside the orthant");
  if ((theta.array() == 0.0).all()) throw Error(ErrorCode::ZeroVector, "L evaluated at the origin");
}

class LinearImpl final : public LFunction::Impl {
 public:
  explicit LinearImpl(Vec lambdas) : lambdas_(std::move(lambdas)) {}
  double value(const Vec& theta) const override { return lambdas_.dot(theta); }
  Vec gradient(const Vec&) const override { return lambdas_; }
  Mat hessian(const Vec&) const override { return Mat::Zero(lambdas_.size(), lambdas_.size()); }

 private:
  Vec lambdas_;
};

class PhiImpl final : public LFunction::Impl {
 public:
  explicit PhiImpl(const Polynomial& phi)
      : phi_(phi), dphi_(phi.derivative()), ddphi_(dphi_.derivative()) {
    smooth_at_zero_ = dphi_.vanishes_at_zero();
    if (smooth_at_zero_) {
      q_ = dphi_.divide_by_t();
      dq_ = q_.derivative();
      dq_smooth_ = dq_.vanishes_at_zero();
      if (dq_smooth_) dq_over_t_ = dq_.divide_by_t();
    }
  }

  double value(const Vec& theta) const override {
    const double s = theta.sum();
    const double t = std::sqrt(theta(1) / s);
    const double p = phi_(t);
    return s * p * p;
  }

  Vec gradient(const Vec& theta) const override {
    const double t = std::sqrt(theta(1) / theta.sum());
    const double p = phi_(t);
    const double dp = dphi_(t);
    Vec g(2);
    g(0) = p * p - t * p * dp;
    g(1) = p * p - t * p * dp + p * q(t, dp);
    return g;
  }

  Mat hessian(const Vec& theta) const override {
    const double s = theta.sum();
    const double t = std::sqrt(theta(1) / s);
    const double p = phi_(t);
    const double dp = dphi_(t);
    const double ddp = ddphi_(t);
    const double qt = q(t, dp);
    // g1 = phi^2 - t phi phi',  g2 = g1 + phi q,  q = phi'/t
    const double g1p = p * dp - t * dp * dp - t * p * ddp;
    const double g1p_over_t = p * qt - dp * dp - p * ddp;
    // q' / t, polynomial when phi'(0) = 0 and q'(0) = 0
    double dq_over_t;
    if (smooth_at_zero_) {
      if (dq_smooth_) {
        dq_over_t = dq_over_t_(t);
      } else {
        dq_over_t = t > 0.0 ? dq_(t) / t : std::numeric_limits<double>::infinity();
      }
    } else {
      // q' = (t phi'' - phi') / t^2
      dq_over_t = t > 0.0 ? (t * ddp - dp) / (t * t * t) : std::numeric_limits<double>::infinity();
    }
    const double g2p_over_t = g1p_over_t + qt * qt + p * dq_over_t;
    Mat h(2, 2);
    h(0, 0) = -g1p * t / (2.0 * s);
    h(0, 1) = h(1, 0) = g1p_over_t * (1.0 - t * t) / (2.0 * s);
    h(1, 1) = g2p_over_t * (1.0 - t * t) / (2.0 * s);
    return h;
  }

  bool differentiable_at(const Vec& theta) const override {
    // within the band the 1/t terms swamp the result in rounding noise
    return smooth_at_zero_ || theta(1) > kConeBand * (theta(0) + theta(1));
  }

 private:
  // phi'(t) / t, with the polynomial quotient when phi'(0) = 0.
  double q(double t, double dp) const {
    if (smooth_at_zero_) return q_(t);
    if (t == 0.0) return std::numeric_limits<double>::infinity();
    return dp / t;
  }

  Polynomial phi_, dphi_, ddphi_;
  bool smooth_at_zero_ = false;
  bool dq_smooth_ = false;
  Polynomial q_;
  Polynomial dq_;
  Polynomial dq_over_t_;
};

class Pert3Impl final : public LFunction::Impl {
 public:
  Pert3Impl(Vec lambdas, double eps) : lambdas_(std::move(lambdas)), eps_(eps) {}

  double value(const Vec& x) const override {
    const double s = x.sum();
    return lambdas_.dot(x) + eps_ * x(0) * x(1) * x(2) / (s * s);
  }

  Vec gradient(const Vec& x) const override {
    const double s = x.sum();
    const double p = x(0) * x(1) * x(2);
    Vec g = lambdas_;
    const double pairs[3] = {x(1) * x(2), x(0) * x(2), x(0) * x(1)};
    for (int i = 0; i < 3; ++i) g(i) += eps_ * (pairs[i] / (s * s) - 2.0 * p / (s * s * s));
    return g;
  }

  Mat hessian(const Vec& x) const override {
    const double s = x.sum();
    const double s2 = s * s;
    const double s3 = s2 * s;
    const double s4 = s3 * s;
    const double p = x(0) * x(1) * x(2);
    const double pairs[3] = {x(1) * x(2), x(0) * x(2), x(0) * x(1)};
    Mat h(3, 3);
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) {
        // d/dx_j of (pairs_i / s^2 - 2 p / s^3)
        const double dpair = (i == j) ? 0.0 : x(3 - i - j);
        const double v = dpair / s2 - 2.0 * pairs[i] / s3 - 2.0 * pairs[j] / s3 + 6.0 * p / s4;
        h(i, j) = eps_ * v;
      }
    }
    return h;
  }

 private:
  Vec lambdas_;
  double eps_;
};

class UserImpl final : public LFunction::Impl {
 public:
  UserImpl(std::function<double(const Vec&)> v, std::function<Vec(const Vec&)> g,
           std::function<Mat(const Vec&)> h)
      : v_(std::move(v)), g_(std::move(g)), h_(std::move(h)) {}
  double value(const Vec& x) const override { return v_(x); }
  Vec gradient(const Vec& x) const override { return g_(x); }
  Mat hessian(const Vec& x) const override { return h_(x); }

 private:
  std::function<double(const Vec&)> v_;
  std::function<Vec(const Vec&)> g_;
  std::function<Mat(const Vec&)> h_;
};

std::string format_list(const std::vector<double>& v) {
  std::ostringstream os;
  os.precision(17);
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) os << ',';
    os << v[i];
  }
  return os.str();
}

std::vector<Eigen::Index> convexity_dims(Eigen::Index arity) {
  return std::vector<Eigen::Index>(static_cast<std::size_t>(arity), 2);
}

}  // namespace

LFunction::LFunction(std::shared_ptr<const Impl> impl, LKind kind, Eigen::Index arity, std::string spec)
    : impl_(std::move(impl)), kind_(kind), arity_(arity), spec_(std::move(spec)) {}

double LFunction::value(const Vec& theta) const {
  check_theta(theta, arity_);
  return impl_->value(theta);
}

Vec LFunction::gradient(const Vec& theta) const {
  check_theta(theta, arity_);
  return impl_->gradient(theta);
}

Mat LFunction::hessian(const Vec& theta) const {
  check_theta(theta, arity_);
  return impl_->hessian(theta);
}

bool LFunction::differentiable_at(const Vec& theta) const {
  check_theta(theta, arity_);
  return impl_->differentiable_at(theta);
}

LFunction l_linear(const std::vector<double>& lambdas) {
  if (lambdas.empty()) throw Error(ErrorCode::InvalidArgument, "linear L needs at least one coefficient");
  for (double l : lambdas) {
    if (!(l > 0.0) || !std::isfinite(l)) {
      throw Error(ErrorCode::NonPositiveCoefficient, "linear coefficients must be positive");
    }
  }
  const Vec lam = Eigen::Map<const Vec>(lambdas.data(), static_cast<Eigen::Index>(lambdas.size()));
  LFunction l(std::make_shared<LinearImpl>(lam), LKind::Linear, lam.size(),
              "linear:" + format_list(lambdas));
  l.normal_ = (lam.array() == lam(0)).all();
  return l;
}

LFunction phi_l_function(const PhiProfile& profile) {
  LFunction l(std::make_shared<PhiImpl>(profile.phi), LKind::Phi, 2,
              "phi:" + format_list(profile.phi.coeffs()));
  l.phi_ = profile.phi;
  l.normal_ = profile.phi.degree() <= 0;
  return l;
}

LFunction l_from_phi(const PhiProfile& profile) {
  if (profile.phi.coeffs().empty()) throw Error(ErrorCode::InvalidProfile, "empty phi");
  if (profile.phi.degree() > PhiProfile::kMaxDegree) {
    throw Error(ErrorCode::InvalidProfile, "phi degree exceeds " + std::to_string(PhiProfile::kMaxDegree));
  }
  const PhiProfile::Screen s = profile.screen();
  if (!(s.min_phi > 0.0)) {
    throw Error(ErrorCode::InvalidProfile,
                "phi is not positive on [0,1] (min " + std::to_string(s.min_phi) + " near t = " +
                    std::to_string(s.worst_t) + ")");
  }
  if (!(s.min_coeff1 > 0.0) || !(s.min_coeff2 > 0.0)) {
    throw Error(ErrorCode::InvalidProfile, "phi - t phi' or phi - (t - 1/t) phi' is not positive");
  }
  LFunction l = phi_l_function(profile);
  const ConvexityReport r = strong_convexity_check(l, convexity_dims(2), 400, 7);
  if (!r.passed) {
    throw Error(ErrorCode::NotStronglyConvex,
                "fundamental tensor not positive definite (min eigenvalue " +
                    std::to_string(r.min_eigenvalue) + ")");
  }
  return l;
}

LFunction pert3_l_function(double l1, double l2, double l3, double eps) {
  Vec lam(3);
  lam << l1, l2, l3;
  return LFunction(std::make_shared<Pert3Impl>(lam, eps), LKind::PerturbedLinear, 3,
                   "pert3:" + format_list({l1, l2, l3, eps}));
}

LFunction l_pert3(double l1, double l2, double l3, double eps) {
  for (double l : {l1, l2, l3}) {
    if (!(l > 0.0)) throw Error(ErrorCode::NonPositiveCoefficient, "pert3 coefficients must be positive");
  }
  LFunction l = pert3_l_function(l1, l2, l3, eps);
  const ConvexityReport r = strong_convexity_check(l, convexity_dims(3), 400, 7);
  if (!r.passed) {
    throw Error(ErrorCode::NotStronglyConvex,
                "pert3 fundamental tensor not positive definite (min eigenvalue " +
                    std::to_string(r.min_eigenvalue) + ")");
  }
  return l;
}

LFunction l_user(Eigen::Index arity, std::function<double(const Vec&)> value,
                 std::function<Vec(const Vec&)> gradient, std::function<Mat(const Vec&)> hessian,
                 std::string description) {
  return LFunction(std::make_shared<UserImpl>(std::move(value), std::move(gradient), std::move(hessian)),
                   LKind::User, arity, std::move(description));
}

LFunction parse_metric(std::string_view text) {
  auto fail = [&](std::size_t col, const std::string& msg) -> LFunction {
    throw Error(ErrorCode::SpecParse, "metric spec '" + std::string(text) + "' at 1:" +
                                          std::to_string(col + 1) + ": " + msg);
  };
  const auto colon = text.find(':');
  if (colon == std::string_view::npos) return fail(text.size(), "expected '<kind>:'");
  const std::string_view kind = text.substr(0, colon);
  std::vector<double> values;
  std::size_t pos = colon + 1;
  if (pos >= text.size()) return fail(pos, "missing numbers");
  while (true) {
    std::size_t end = text.find(',', pos);
    if (end == std::string_view::npos) end = text.size();
    if (end == pos) return fail(pos, "empty number");
    double v = 0.0;
    const char* first = text.data() + pos;
    const char* last = text.data() + end;
    if (*first == '+') ++first;
    const auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || ptr != last || !std::isfinite(v)) {
      return fail(static_cast<std::size_t>(ptr - text.data()), "invalid number");
    }
    values.push_back(v);
    if (end == text.size()) break;
    pos = end + 1;
  }
  if (kind == "linear") return l_linear(values);
  if (kind == "phi") return l_from_phi(PhiProfile{Polynomial(values)});
  if (kind == "pert3") {
    if (values.size() != 4) return fail(colon + 1, "pert3 expects l1,l2,l3,eps");
    return l_pert3(values[0], values[1], values[2], values[3]);
  }
  return fail(0, "unknown metric kind '" + std::string(kind) + "'");
}

// ------------------------------------------------------- tensors on m

namespace {

void check_arity(const LFunction& l, const Decomposition& dec, const Vec& y) {
  if (static_cast<Eigen::Index>(dec.size()) != l.arity()) {
    throw Error(ErrorCode::DimensionMismatch, "L arity does not match the number of summands");
  }
  if (y.size() != dec.dim_m()) throw Error(ErrorCode::DimensionMismatch, "vector is not in m");
}

}  // namespace

double finsler_norm(const LFunction& l, const Decomposition& dec, const Vec& y) {
  check_arity(l, dec, y);
  if (y.squaredNorm() == 0.0) return 0.0;
  return std::sqrt(l.value(dec.thetas(y)));
}

Mat fundamental_tensor(const LFunction& l, const Decomposition& dec, const Vec& y) {
  check_arity(l, dec, y);
  const std::size_t s = dec.size();
  std::vector<Vec> parts(s);
  Vec theta(static_cast<Eigen::Index>(s));
  for (std::size_t a = 0; a < s; ++a) {
    parts[a] = dec.project(y, a);
    theta(static_cast<Eigen::Index>(a)) = parts[a].squaredNorm();
  }
  if ((theta.array() == 0.0).all()) throw Error(ErrorCode::ZeroVector, "fundamental tensor at y = 0");
  if (!l.differentiable_at(theta)) {
    throw Error(ErrorCode::BoundaryNondifferentiable, "L is not differentiable on this face of the orthant");
  }
  const Vec grad = l.gradient(theta);
  const Mat hess = l.hessian(theta);
  const Eigen::Index n = y.size();
  Mat g = Mat::Zero(n, n);
  for (std::size_t a = 0; a < s; ++a) {
    g += grad(static_cast<Eigen::Index>(a)) * dec.projector(a);
  }
  for (std::size_t a = 0; a < s; ++a) {
    if (theta(static_cast<Eigen::Index>(a)) == 0.0) continue;
    for (std::size_t b = 0; b < s; ++b) {
      if (theta(static_cast<Eigen::Index>(b)) == 0.0) continue;
      g.noalias() += 2.0 * hess(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) *
                     parts[a] * parts[b].transpose();
    }
  }
  return 0.5 * (g + g.transpose());
}

Mat metric_operator(const LFunction& l, const Decomposition& dec, const Vec& y) {
  Mat a = fundamental_tensor(l, dec, y);
  Eigen::LLT<Mat> llt(a);
  if (llt.info() != Eigen::Success) {
    throw Error(ErrorCode::NotPositiveDefinite, "metric operator is not positive definite at y");
  }
  return a;
}

Vec a_u_of_u(const LFunction& l, const Decomposition& dec, const Vec& u) {
  check_arity(l, dec, u);
  const Vec theta = dec.thetas(u);
  if ((theta.array() == 0.0).all()) throw Error(ErrorCode::ZeroVector, "A_u(u) at u = 0");
  if (!l.differentiable_at(theta)) {
    throw Error(ErrorCode::BoundaryNondifferentiable, "L is not differentiable on this face of the orthant");
  }
  const Vec grad = l.gradient(theta);
  Vec out = Vec::Zero(u.size());
  for (std::size_t a = 0; a < dec.size(); ++a) out += grad(static_cast<Eigen::Index>(a)) * dec.project(u, a);
  return out;
}

Vec spray_vector(const HomogeneousSpace& space, const Decomposition& dec, const LFunction& l, const Vec& y) {
  const Mat a = fundamental_tensor(l, dec, y);
  // w_i = g_y(y, [e_i, y]_m) = Q(A_y y, [e_i, y]_m)
  const Vec w = space.ad_m(y).transpose() * (a * y);
  Eigen::LLT<Mat> llt(a);
  if (llt.info() != Eigen::Success) throw Error(ErrorCode::SingularOperator, "A_y is not invertible");
  return llt.solve(w);
}

Decomposition coordinate_decomposition(const std::vector<Eigen::Index>& dims) {
  Eigen::Index total = 0;
  for (Eigen::Index d : dims) total += d;
  std::vector<Mat> blocks;
  Eigen::Index off = 0;
  for (Eigen::Index d : dims) {
    Mat b = Mat::Zero(d, total);
    b.block(0, off, d, d) = Mat::Identity(d, d);
    blocks.push_back(std::move(b));
    off += d;
  }
  return Decomposition(std::move(blocks));
}

ConvexityReport strong_convexity_check(const LFunction& l, const std::vector<Eigen::Index>& dims,
                                       int samples, std::uint64_t seed) {
  const Decomposition dec = coordinate_decomposition(dims);
  const auto s = static_cast<int>(dims.size());
  ConvexityReport report;
  report.min_eigenvalue = std::numeric_limits<double>::infinity();
  Rng rng(seed);
  const int patterns = (1 << s) - 1;  // nonempty sets of live blocks
  for (int k = 0; k < std::max(samples, 1); ++k) {
    Vec y = unit_vector(rng, dec.dim_m());
    // every patterns-th group covers each face once; the first sample of a group is interior
    const int mask = patterns - (k % patterns);
    for (int a = 0; a < s; ++a) {
      if (!(mask & (1 << a))) y = y - dec.project(y, static_cast<std::size_t>(a));
    }
    y /= y.norm();
    ++report.samples;
    if (!l.differentiable_at(dec.thetas(y))) {
      ++report.skipped_boundary;
      continue;
    }
    const Mat g = fundamental_tensor(l, dec, y);
    Eigen::SelfAdjointEigenSolver<Mat> eig(g, Eigen::EigenvaluesOnly);
    const double lo = eig.eigenvalues()(0);
    if (!(lo >= report.min_eigenvalue)) {
      report.min_eigenvalue = lo;
      report.witness = y;
    }
  }
  report.passed = report.min_eigenvalue > 0.0 && std::isfinite(report.min_eigenvalue);
  return report;
}

}  // namespace gospace
