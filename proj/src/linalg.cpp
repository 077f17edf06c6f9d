#include "gospace/linalg.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>

#include "gospace/error.hpp"

namespace gospace {

namespace {

std::atomic<double> g_rank_rtol{-1.0};

using Svd = Eigen::BDCSVD<Mat>;

}  // namespace

double default_rank_rtol() { return g_rank_rtol.load(); }

void set_default_rank_rtol(double rtol) { g_rank_rtol.store(rtol); }

double rank_cutoff(Eigen::Index rows, Eigen::Index cols, double sigma_max, double rtol) {
  if (rtol <= 0.0) rtol = default_rank_rtol();
  if (rtol <= 0.0) {
    rtol = static_cast<double>(std::max<Eigen::Index>({rows, cols, 1})) *
           std::numeric_limits<double>::epsilon();
  }
  return rtol * sigma_max;
}

Eigen::Index numerical_rank(const Mat& a, double rtol) {
  if (a.size() == 0) return 0;
  Svd svd(a);
  const Vec& s = svd.singularValues();
  if (s.size() == 0 || s(0) == 0.0) return 0;
  const double cut = rank_cutoff(a.rows(), a.cols(), s(0), rtol);
  return (s.array() > cut).count();
}

Mat null_space(const Mat& a, double rtol, double abs_floor) {
  const Eigen::Index n = a.cols();
  if (n == 0) return Mat(0, 0);
  if (a.rows() == 0) return Mat::Identity(n, n);
  Svd svd(a, Eigen::ComputeFullV);
  const Vec& s = svd.singularValues();
  Eigen::Index rank = 0;
  if (s.size() > 0 && s(0) > 0.0) {
    const double cut = std::max(rank_cutoff(a.rows(), a.cols(), s(0), rtol), abs_floor);
    rank = (s.array() > cut).count();
  }
  return svd.matrixV().rightCols(n - rank).transpose();
}

Mat row_span(const Mat& rows, double rtol, double abs_floor) {
  const Eigen::Index n = rows.cols();
  if (rows.rows() == 0) return Mat(0, n);
  Svd svd(rows, Eigen::ComputeThinV);
  const Vec& s = svd.singularValues();
  if (s.size() == 0 || s(0) == 0.0) return Mat(0, n);
  const double cut = std::max(rank_cutoff(rows.rows(), rows.cols(), s(0), rtol), abs_floor);
  const Eigen::Index rank = (s.array() > cut).count();
  return svd.matrixV().leftCols(rank).transpose();
}

Mat orthogonal_complement(const Mat& rows, Eigen::Index n, double rtol) {
  if (rows.rows() == 0) return Mat::Identity(n, n);
  return null_space(rows, rtol);
}

Mat intersect(const Mat& a, const Mat& b, double rtol) {
  const Eigen::Index n = std::max(a.cols(), b.cols());
  if (a.rows() == 0 || b.rows() == 0) return Mat(0, n);
  // x = a^T p = b^T q  <=>  [a^T, -b^T] (p; q) = 0
  Mat stacked(n, a.rows() + b.rows());
  stacked << a.transpose(), -b.transpose();
  const Mat ker = null_space(stacked, rtol);
  if (ker.rows() == 0) return Mat(0, n);
  const Mat vecs = ker.leftCols(a.rows()) * a;
  return row_span(vecs, rtol);
}

LeastSquares lstsq(const Mat& a, const Vec& b, double rtol, double abs_floor) {
  if (a.rows() != b.size()) {
    throw Error(ErrorCode::DimensionMismatch, "lstsq: rows != rhs length");
  }
  LeastSquares out;
  out.x = Vec::Zero(a.cols());
  out.rank = 0;
  if (a.cols() == 0 || a.rows() == 0) {
    out.residual = -b;
    return out;
  }
  Svd svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Vec& s = svd.singularValues();
  if (s.size() > 0 && s(0) > 0.0) {
    const double cut = std::max(rank_cutoff(a.rows(), a.cols(), s(0), rtol), abs_floor);
    out.rank = (s.array() > cut).count();
    const Vec coeff =
        (svd.matrixU().leftCols(out.rank).transpose() * b).cwiseQuotient(s.head(out.rank));
    out.x = svd.matrixV().leftCols(out.rank) * coeff;
  }
  out.residual = a * out.x - b;
  return out;
}

Mat orthonormalize_rows(const Mat& rows, const Mat& metric, double rtol) {
  const Eigen::Index n = rows.cols();
  if (metric.rows() != n || metric.cols() != n) {
    throw Error(ErrorCode::DimensionMismatch, "orthonormalize_rows: metric shape");
  }
  if (rows.rows() == 0) return Mat(0, n);
  double scale = 0.0;
  for (Eigen::Index i = 0; i < rows.rows(); ++i) {
    scale = std::max(scale, std::sqrt(std::abs(rows.row(i).dot(metric * rows.row(i).transpose()))));
  }
  if (scale == 0.0) return Mat(0, n);
  const double cut = rank_cutoff(rows.rows(), n, scale, rtol) * 16.0;

  std::vector<Vec> basis;
  for (Eigen::Index i = 0; i < rows.rows(); ++i) {
    Vec v = rows.row(i).transpose();
    for (int pass = 0; pass < 2; ++pass) {
      for (const Vec& e : basis) v -= e.dot(metric * v) * e;
    }
    const double nrm = std::sqrt(std::max(0.0, v.dot(metric * v)));
    if (nrm > cut) basis.push_back(v / nrm);
  }
  Mat out(static_cast<Eigen::Index>(basis.size()), n);
  for (std::size_t i = 0; i < basis.size(); ++i) out.row(static_cast<Eigen::Index>(i)) = basis[i];
  return out;
}

double max_abs(const Mat& a) { return a.size() == 0 ? 0.0 : a.cwiseAbs().maxCoeff(); }

}  // namespace gospace
