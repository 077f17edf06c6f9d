#pragma once

// Real matrix realizations of the compact classical algebras.
//
// su(n) acts on C^n realified to R^{2n} via  A + iB  ->  [[A, -B], [B, A]].
// sp(n) is realized inside u(2n) as  [[A, -conj(B)], [B, conj(A)]]  with A
// anti-Hermitian and B complex symmetric, then realified to R^{4n}.

#include <complex>
#include <vector>

#include "gospace/linalg.hpp"

namespace gospace::classical {

using CMat = Eigen::MatrixXcd;

Mat realify(const CMat& z);

/// E_ij - E_ji in so(n).
Mat so_gen(int n, int i, int j);
std::vector<Mat> so_basis(int n);

/// Off-diagonal su(n) generators: real part E_ij - E_ji, imaginary part
/// i(E_ij + E_ji). i < j.
Mat su_real(int n, int i, int j);
Mat su_imag(int n, int i, int j);
/// i * diag(d), realified. d must have length n (trace zero for su(n)).
Mat su_diag(const std::vector<double>& d);
std::vector<Mat> su_basis(int n);

/// sp(n) generators in quaternionic index pairs (i <= j where symmetric).
Mat sp_a_real(int n, int i, int j);  // A = E_ij - E_ji, i < j
Mat sp_a_imag(int n, int i, int j);  // A = i(E_ij + E_ji), i <= j (i == j: i E_ii)
Mat sp_b_real(int n, int i, int j);  // B = E_ij + E_ji,   i <= j (i == j: E_ii)
Mat sp_b_imag(int n, int i, int j);  // B = i(E_ij + E_ji), i <= j (i == j: i E_ii)
std::vector<Mat> sp_basis(int n);

/// The standard complex structure on R^{2k}: [[0, -I], [I, 0]].
Mat complex_structure(int k);

/// Pads a d x d matrix into the top-left corner of an n x n zero matrix.
Mat pad(const Mat& m, int n);

/// Block-diagonal copy of `m` at rows/cols [offset, offset + m.rows()) of an n x n matrix.
Mat place(const Mat& m, int n, int offset);

}  // namespace gospace::classical
