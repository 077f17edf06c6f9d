#pragma once

// Dense numerical-rank helpers shared by every module. Subspaces are passed
// around as row bases: a k x n matrix whose rows span a k-dimensional
// subspace of R^n.

#include <Eigen/Dense>

namespace gospace {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

/// Relative singular-value cutoff used for rank decisions. A non-positive
/// value selects the default max(rows, cols) * eps.
double default_rank_rtol();
void set_default_rank_rtol(double rtol);

/// Absolute cutoff for a matrix with the given shape and largest singular value.
double rank_cutoff(Eigen::Index rows, Eigen::Index cols, double sigma_max, double rtol = -1.0);

Eigen::Index numerical_rank(const Mat& a, double rtol = -1.0);

/// Orthonormal row basis of ker(a). Singular values at or below
/// max(relative cutoff, abs_floor) count as zero.
Mat null_space(const Mat& a, double rtol = -1.0, double abs_floor = 0.0);

/// Orthonormal row basis of the row span of `rows`.
Mat row_span(const Mat& rows, double rtol = -1.0, double abs_floor = 0.0);

/// Orthonormal row basis of the orthogonal complement of the row span inside R^n.
Mat orthogonal_complement(const Mat& rows, Eigen::Index n, double rtol = -1.0);

/// Orthonormal row basis of span(a) ∩ span(b); inputs must be orthonormal rows.
Mat intersect(const Mat& a, const Mat& b, double rtol = -1.0);

struct LeastSquares {
  Vec x;              // minimal-norm minimizer
  Vec residual;       // a x - b
  Eigen::Index rank;  // numerical rank of a
};

/// Minimal-norm least squares via thresholded SVD. Singular values at or
/// below max(relative cutoff, abs_floor) are treated as zero; the floor lets
/// callers pass a noise level tied to the scale of the inputs rather than to
/// the largest singular value.
LeastSquares lstsq(const Mat& a, const Vec& b, double rtol = -1.0, double abs_floor = 0.0);

/// Rows re-expressed so that r * metric * r^T = I (modified Gram-Schmidt, two
/// passes). Rows that are dependent within the rank cutoff are dropped.
Mat orthonormalize_rows(const Mat& rows, const Mat& metric, double rtol = -1.0);

double max_abs(const Mat& a);

}  // namespace gospace
