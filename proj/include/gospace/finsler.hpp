#pragma once

// Standard homogeneous (alpha_1, ..., alpha_s)-metrics F = sqrt(L(alpha_1^2, ..., alpha_s^2))
// and the objects derived from them on m: fundamental tensor, metric operator
// A_y, A_u(u) and the spray vector.

#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "gospace/homspace.hpp"

namespace gospace {

class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<double> coeffs);  // c0 + c1 t + c2 t^2 + ...

  double operator()(double t) const;
  Polynomial derivative() const;
  /// p(t) / t; requires p(0) == 0 exactly.
  Polynomial divide_by_t() const;
  bool vanishes_at_zero() const { return coeffs_.empty() || coeffs_.front() == 0.0; }
  const std::vector<double>& coeffs() const { return coeffs_; }
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }

 private:
  std::vector<double> coeffs_;
};

/// phi on [0, 1] for s = 2, with L(theta_1, theta_2) = (theta_1 + theta_2) phi^2(t),
/// t = sqrt(theta_2 / (theta_1 + theta_2)).
struct PhiProfile {
  Polynomial phi;

  static constexpr int kMaxDegree = 8;

  /// min over a dense grid of phi, phi - t phi' and phi - (t - 1/t) phi'.
  struct Screen {
    double min_phi;
    double min_coeff1;
    double min_coeff2;
    double worst_t;
  };
  Screen screen(int grid = 4000) const;
};

/// When phi'(0) != 0, L is not differentiable at theta_2 = 0. Points with
/// theta_2 <= kConeBand (theta_1 + theta_2), i.e. t <= 1e-6, are treated as
/// lying on that face.
inline constexpr double kConeBand = 1e-12;

enum class LKind { Linear, Phi, PerturbedLinear, User };

std::string_view to_string(LKind kind);

class LFunction {
 public:
  struct Impl {
    virtual ~Impl() = default;
    virtual double value(const Vec& theta) const = 0;
    virtual Vec gradient(const Vec& theta) const = 0;
    virtual Mat hessian(const Vec& theta) const = 0;
    /// False on boundary points of the orthant where the gradient blows up.
    virtual bool differentiable_at(const Vec& /*theta*/) const { return true; }
  };

  LFunction(std::shared_ptr<const Impl> impl, LKind kind, Eigen::Index arity, std::string spec);

  Eigen::Index arity() const { return arity_; }
  LKind kind() const { return kind_; }
  /// Metric spec string this function was built from (or a description).
  const std::string& spec() const { return spec_; }

  double value(const Vec& theta) const;
  Vec gradient(const Vec& theta) const;
  Mat hessian(const Vec& theta) const;
  bool differentiable_at(const Vec& theta) const;

  /// True for linear L with all coefficients equal (the normal metric up to scale).
  bool is_normal() const { return normal_; }
  bool is_riemannian() const { return kind_ == LKind::Linear; }

  /// Coefficients of phi for LKind::Phi (empty otherwise).
  const Polynomial& phi() const { return phi_; }

 private:
  friend LFunction l_linear(const std::vector<double>&);
  friend LFunction phi_l_function(const PhiProfile&);

  std::shared_ptr<const Impl> impl_;
  LKind kind_;
  Eigen::Index arity_;
  std::string spec_;
  bool normal_ = false;
  Polynomial phi_;
};

/// L = sum lambda_i theta_i. Error: NonPositiveCoefficient.
LFunction l_linear(const std::vector<double>& lambdas);

/// L from a phi profile, without any screening.
LFunction phi_l_function(const PhiProfile& profile);

/// Screened constructor. Errors: InvalidProfile (degree, positivity of phi or
/// of the two gradient coefficients), NotStronglyConvex.
LFunction l_from_phi(const PhiProfile& profile);

/// L = sum lambda_i theta_i + eps theta_1 theta_2 theta_3 / (theta_1 + theta_2 + theta_3)^2,
/// without screening.
LFunction pert3_l_function(double l1, double l2, double l3, double eps);
/// Screened: NonPositiveCoefficient, NotStronglyConvex.
LFunction l_pert3(double l1, double l2, double l3, double eps);

/// L from caller-supplied oracles.
LFunction l_user(Eigen::Index arity, std::function<double(const Vec&)> value,
                 std::function<Vec(const Vec&)> gradient, std::function<Mat(const Vec&)> hessian,
                 std::string description = "user");

/// Parses `linear:l1,l2[,...]` | `phi:c0,c1,...,ck` | `pert3:l1,l2,l3,eps`.
/// Errors: SpecParse (with column), plus the constructor errors.
LFunction parse_metric(std::string_view text);

/// F(y) = sqrt(L(thetas)).
double finsler_norm(const LFunction& l, const Decomposition& dec, const Vec& y);

/// Hessian of F^2 / 2 at y in m-coordinates (the matrix of A_y, since the
/// m-basis is Q-orthonormal). Errors: ZeroVector, BoundaryNondifferentiable,
/// DimensionMismatch.
Mat fundamental_tensor(const LFunction& l, const Decomposition& dec, const Vec& y);

/// fundamental_tensor checked for positive definiteness. Error: NotPositiveDefinite.
Mat metric_operator(const LFunction& l, const Decomposition& dec, const Vec& y);

/// sum_i dL/dtheta_i u_i from the gradient oracle.
Vec a_u_of_u(const LFunction& l, const Decomposition& dec, const Vec& u);

/// eta(y) with g_y(eta, v) = g_y(y, [v, y]_m) for all v in m. Error: SingularOperator.
Vec spray_vector(const HomogeneousSpace& space, const Decomposition& dec, const LFunction& l,
                 const Vec& y);

struct ConvexityReport {
  bool passed = false;
  double min_eigenvalue = 0.0;
  Vec witness;
  int samples = 0;
  int skipped_boundary = 0;  // samples on a non-differentiable face
};

/// Scans fundamental-tensor eigenvalues at seeded unit vectors of
/// R^{n_1 + ... + n_s} (blocks in order), including vectors with zero blocks.
ConvexityReport strong_convexity_check(const LFunction& l, const std::vector<Eigen::Index>& dims,
                                       int samples, std::uint64_t seed);

/// Decomposition of R^{sum dims} into consecutive coordinate blocks.
Decomposition coordinate_decomposition(const std::vector<Eigen::Index>& dims);

}  // namespace gospace
