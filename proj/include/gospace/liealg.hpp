#pragma once

// Finite-dimensional real Lie algebras given by structure constants.

#include <cstdint>
#include <span>
#include <vector>

#include "gospace/linalg.hpp"

namespace gospace {

/// c(i, j, k) with [e_i, e_j] = sum_k c(i, j, k) e_k. Only the i < j half is
/// stored, so antisymmetry holds exactly.
class StructureTensor {
 public:
  StructureTensor() = default;
  explicit StructureTensor(Eigen::Index dim);

  Eigen::Index dim() const { return dim_; }

  double operator()(Eigen::Index i, Eigen::Index j, Eigen::Index k) const;

  /// Sets c(i, j, k) = value (and implicitly c(j, i, k) = -value). i != j.
  void set(Eigen::Index i, Eigen::Index j, Eigen::Index k, double value);

  Vec bracket(const Vec& x, const Vec& y) const;

  /// Matrix of ad(e_i): column j holds [e_i, e_j].
  Mat ad_basis(Eigen::Index i) const;

 private:
  std::size_t offset(Eigen::Index i, Eigen::Index j) const;

  Eigen::Index dim_ = 0;
  std::vector<double> upper_;  // (i<j pairs) x dim
};

class LieAlgebra {
 public:
  /// Takes ownership of the structure constants and derives the Killing form.
  /// Throws NonCompact unless Q = -B is positive definite.
  explicit LieAlgebra(StructureTensor structure);

  Eigen::Index dim() const { return structure_.dim(); }
  const StructureTensor& structure() const { return structure_; }
  const Mat& killing() const { return killing_; }
  const Mat& q_form() const { return q_form_; }

  Vec bracket(const Vec& x, const Vec& y) const;
  const Mat& ad_basis(Eigen::Index i) const { return ad_[static_cast<std::size_t>(i)]; }
  Mat ad(const Vec& x) const;

  double q(const Vec& x, const Vec& y) const { return x.dot(q_form_ * y); }
  double q_norm(const Vec& x) const;

 private:
  StructureTensor structure_;
  std::vector<Mat> ad_;
  Mat killing_;
  Mat q_form_;
};

/// B(x, y) = trace(ad x ad y) from a structure tensor, no compactness check.
Mat killing_form(const StructureTensor& c);

/// Structure constants of span(basis) under the matrix commutator.
/// Errors: DependentBasis, NonClosed, NonCompact.
LieAlgebra from_matrices(std::span<const Mat> basis, double closure_tol = 1e-10);

/// Coordinates of each matrix in `targets` with respect to `basis`
/// (least squares against the Frobenius Gram matrix). Returns one row per
/// target. Throws NonClosed when a target lies outside the span.
Mat matrix_coordinates(std::span<const Mat> basis, std::span<const Mat> targets,
                       double tol = 1e-10);

LieAlgebra direct_sum(std::span<const LieAlgebra> factors);

/// max ||[x,[y,z]] + [y,[z,x]] + [z,[x,y]]|| / (||x|| ||y|| ||z||) over seeded
/// Gaussian triples.
double jacobi_residual(const StructureTensor& c, int trials, std::uint64_t seed);
double jacobi_residual(const LieAlgebra& g, int trials, std::uint64_t seed);

/// max |Q([x,y],z) + Q(y,[x,z])| / (||x|| ||y|| ||z|| ||Q||) over seeded triples.
double ad_invariance_residual(const LieAlgebra& g, int trials, std::uint64_t seed);

}  // namespace gospace
