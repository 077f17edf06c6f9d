#include "gospace/liealg.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "gospace/error.hpp"
#include "gospace/random.hpp"

namespace gospace {

StructureTensor::StructureTensor(Eigen::Index dim)
    : dim_(dim),
      upper_(static_cast<std::size_t>(dim * (dim - 1) / 2 * dim), 0.0) {
  if (dim <= 0) throw Error(ErrorCode::InvalidArgument, "Lie algebra dimension must be positive");
}

std::size_t StructureTensor::offset(Eigen::Index i, Eigen::Index j) const {
  // i < j
  const Eigen::Index pair = i * dim_ - i * (i + 1) / 2 + (j - i - 1);
  return static_cast<std::size_t>(pair * dim_);
}

double StructureTensor::operator()(Eigen::Index i, Eigen::Index j, Eigen::Index k) const {
  if (i == j) return 0.0;
  if (i < j) return upper_[offset(i, j) + static_cast<std::size_t>(k)];
  return -upper_[offset(j, i) + static_cast<std::size_t>(k)];
}

void StructureTensor::set(Eigen::Index i, Eigen::Index j, Eigen::Index k, double value) {
  if (i == j) throw Error(ErrorCode::InvalidArgument, "StructureTensor::set with i == j");
  if (i < j) {
    upper_[offset(i, j) + static_cast<std::size_t>(k)] = value;
  } else {
    upper_[offset(j, i) + static_cast<std::size_t>(k)] = -value;
  }
}

Vec StructureTensor::bracket(const Vec& x, const Vec& y) const {
  if (x.size() != dim_ || y.size() != dim_) {
    throw Error(ErrorCode::DimensionMismatch,
                "bracket: expected length " + std::to_string(dim_));
  }
  Vec out = Vec::Zero(dim_);
  for (Eigen::Index i = 0; i < dim_; ++i) {
    for (Eigen::Index j = i + 1; j < dim_; ++j) {
      const double w = x(i) * y(j) - x(j) * y(i);
      if (w == 0.0) continue;
      const double* c = upper_.data() + offset(i, j);
      for (Eigen::Index k = 0; k < dim_; ++k) out(k) += w * c[k];
    }
  }
  return out;
}

Mat StructureTensor::ad_basis(Eigen::Index i) const {
  Mat a(dim_, dim_);
  for (Eigen::Index j = 0; j < dim_; ++j) {
    for (Eigen::Index k = 0; k < dim_; ++k) a(k, j) = (*this)(i, j, k);
  }
  return a;
}

Mat killing_form(const StructureTensor& c) {
  const Eigen::Index n = c.dim();
  std::vector<Mat> ad;
  ad.reserve(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) ad.push_back(c.ad_basis(i));
  Mat b(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i; j < n; ++j) {
      // trace(A B) = sum of elementwise product of A and B^T
      const double t = ad[i].cwiseProduct(ad[j].transpose()).sum();
      b(i, j) = t;
      b(j, i) = t;
    }
  }
  return b;
}

LieAlgebra::LieAlgebra(StructureTensor structure) : structure_(std::move(structure)) {
  const Eigen::Index n = structure_.dim();
  ad_.reserve(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) ad_.push_back(structure_.ad_basis(i));
  killing_ = killing_form(structure_);
  q_form_ = -killing_;

  Eigen::SelfAdjointEigenSolver<Mat> eig(q_form_, Eigen::EigenvaluesOnly);
  const Vec& ev = eig.eigenvalues();
  const double top = ev.cwiseAbs().maxCoeff();
  const double cut = rank_cutoff(n, n, top);
  if (top == 0.0 || ev(0) <= cut) {
    throw Error(ErrorCode::NonCompact,
                "Q = -B is not positive definite (min eigenvalue " + std::to_string(ev(0)) + ")");
  }
}

Vec LieAlgebra::bracket(const Vec& x, const Vec& y) const { return structure_.bracket(x, y); }

Mat LieAlgebra::ad(const Vec& x) const {
  if (x.size() != dim()) throw Error(ErrorCode::DimensionMismatch, "ad: wrong length");
  Mat a = Mat::Zero(dim(), dim());
  for (Eigen::Index i = 0; i < dim(); ++i) {
    if (x(i) != 0.0) a += x(i) * ad_[static_cast<std::size_t>(i)];
  }
  return a;
}

double LieAlgebra::q_norm(const Vec& x) const { return std::sqrt(std::max(0.0, q(x, x))); }

Mat matrix_coordinates(std::span<const Mat> basis, std::span<const Mat> targets, double tol) {
  const auto n = static_cast<Eigen::Index>(basis.size());
  Mat gram(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i; j < n; ++j) {
      gram(i, j) = gram(j, i) = basis[i].cwiseProduct(basis[j]).sum();
    }
  }
  Eigen::LDLT<Mat> ldlt(gram);
  Mat out(static_cast<Eigen::Index>(targets.size()), n);
  for (std::size_t t = 0; t < targets.size(); ++t) {
    Vec rhs(n);
    for (Eigen::Index k = 0; k < n; ++k) rhs(k) = basis[k].cwiseProduct(targets[t]).sum();
    const Vec x = ldlt.solve(rhs);
    Mat recon = Mat::Zero(targets[t].rows(), targets[t].cols());
    for (Eigen::Index k = 0; k < n; ++k) recon += x(k) * basis[k];
    const double scale = std::max(1.0, targets[t].norm());
    if ((recon - targets[t]).norm() > tol * scale) {
      throw Error(ErrorCode::NonClosed, "matrix lies outside the span of the basis");
    }
    out.row(static_cast<Eigen::Index>(t)) = x.transpose();
  }
  return out;
}

LieAlgebra from_matrices(std::span<const Mat> basis, double closure_tol) {
  const auto n = static_cast<Eigen::Index>(basis.size());
  if (n == 0) throw Error(ErrorCode::InvalidArgument, "empty basis");
  const Eigen::Index d = basis[0].rows();
  for (const Mat& m : basis) {
    if (m.rows() != d || m.cols() != d) {
      throw Error(ErrorCode::DimensionMismatch, "basis matrices must share one square shape");
    }
  }
  Mat gram(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i; j < n; ++j) {
      gram(i, j) = gram(j, i) = basis[i].cwiseProduct(basis[j]).sum();
    }
  }
  if (numerical_rank(gram) < n) {
    throw Error(ErrorCode::DependentBasis, "Gram matrix of the basis is rank-deficient");
  }

  std::vector<Mat> commutators;
  commutators.reserve(static_cast<std::size_t>(n * (n - 1) / 2));
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j) {
      commutators.push_back(basis[i] * basis[j] - basis[j] * basis[i]);
    }
  }
  Mat coords;
  try {
    coords = matrix_coordinates(basis, commutators, closure_tol);
  } catch (const Error&) {
    throw Error(ErrorCode::NonClosed, "commutator leaves the span of the basis");
  }

  StructureTensor c(n);
  Eigen::Index row = 0;
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j, ++row) {
      for (Eigen::Index k = 0; k < n; ++k) c.set(i, j, k, coords(row, k));
    }
  }
  return LieAlgebra(std::move(c));
}

LieAlgebra direct_sum(std::span<const LieAlgebra> factors) {
  if (factors.empty()) throw Error(ErrorCode::InvalidArgument, "direct_sum of nothing");
  Eigen::Index total = 0;
  for (const LieAlgebra& f : factors) total += f.dim();
  StructureTensor c(total);
  Eigen::Index base = 0;
  for (const LieAlgebra& f : factors) {
    const Eigen::Index n = f.dim();
    for (Eigen::Index i = 0; i < n; ++i) {
      for (Eigen::Index j = i + 1; j < n; ++j) {
        for (Eigen::Index k = 0; k < n; ++k) {
          const double v = f.structure()(i, j, k);
          if (v != 0.0) c.set(base + i, base + j, base + k, v);
        }
      }
    }
    base += n;
  }
  return LieAlgebra(std::move(c));
}

double jacobi_residual(const StructureTensor& c, int trials, std::uint64_t seed) {
  Rng rng(seed);
  double worst = 0.0;
  for (int t = 0; t < std::max(trials, 1); ++t) {
    const Vec x = gaussian_vector(rng, c.dim());
    const Vec y = gaussian_vector(rng, c.dim());
    const Vec z = gaussian_vector(rng, c.dim());
    const Vec j = c.bracket(x, c.bracket(y, z)) + c.bracket(y, c.bracket(z, x)) +
                  c.bracket(z, c.bracket(x, y));
    worst = std::max(worst, j.norm() / (x.norm() * y.norm() * z.norm()));
  }
  return worst;
}

double jacobi_residual(const LieAlgebra& g, int trials, std::uint64_t seed) {
  return jacobi_residual(g.structure(), trials, seed);
}

double ad_invariance_residual(const LieAlgebra& g, int trials, std::uint64_t seed) {
  Rng rng(seed);
  const double qscale = g.q_form().norm();
  double worst = 0.0;
  for (int t = 0; t < std::max(trials, 1); ++t) {
    const Vec x = gaussian_vector(rng, g.dim());
    const Vec y = gaussian_vector(rng, g.dim());
    const Vec z = gaussian_vector(rng, g.dim());
    const double r = g.q(g.bracket(x, y), z) + g.q(y, g.bracket(x, z));
    worst = std::max(worst, std::abs(r) / (x.norm() * y.norm() * z.norm() * qscale));
  }
  return worst;
}

}  // namespace gospace
