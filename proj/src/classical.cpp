#include "gospace/classical.hpp"

#include "gospace/error.hpp"

namespace gospace::classical {

namespace {

const std::complex<double> kI{0.0, 1.0};

CMat unit_sym(int n, int i, int j) {
  CMat e = CMat::Zero(n, n);
  if (i == j) {
    e(i, i) = 1.0;
  } else {
    e(i, j) = 1.0;
    e(j, i) = 1.0;
  }
  return e;
}

// [[A, -conj(B)], [B, conj(A)]] realified.
Mat sp_embed(const CMat& a, const CMat& b) {
  const auto n = a.rows();
  CMat z(2 * n, 2 * n);
  z << a, -b.conjugate(), b, a.conjugate();
  return realify(z);
}

}  // namespace

Mat realify(const CMat& z) {
  const auto n = z.rows();
  Mat r(2 * n, 2 * n);
  r << z.real(), -z.imag(), z.imag(), z.real();
  return r;
}

Mat so_gen(int n, int i, int j) {
  Mat m = Mat::Zero(n, n);
  m(i, j) = 1.0;
  m(j, i) = -1.0;
  return m;
}

std::vector<Mat> so_basis(int n) {
  std::vector<Mat> out;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) out.push_back(so_gen(n, i, j));
  }
  return out;
}

Mat su_real(int n, int i, int j) {
  CMat z = CMat::Zero(n, n);
  z(i, j) = 1.0;
  z(j, i) = -1.0;
  return realify(z);
}

Mat su_imag(int n, int i, int j) { return realify(kI * unit_sym(n, i, j)); }

Mat su_diag(const std::vector<double>& d) {
  const int n = static_cast<int>(d.size());
  CMat z = CMat::Zero(n, n);
  for (int i = 0; i < n; ++i) z(i, i) = kI * d[static_cast<std::size_t>(i)];
  return realify(z);
}

std::vector<Mat> su_basis(int n) {
  std::vector<Mat> out;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      out.push_back(su_real(n, i, j));
      out.push_back(su_imag(n, i, j));
    }
  }
  for (int k = 0; k + 1 < n; ++k) {
    std::vector<double> d(static_cast<std::size_t>(n), 0.0);
    d[static_cast<std::size_t>(k)] = 1.0;
    d[static_cast<std::size_t>(k + 1)] = -1.0;
    out.push_back(su_diag(d));
  }
  return out;
}

Mat sp_a_real(int n, int i, int j) {
  CMat a = CMat::Zero(n, n);
  a(i, j) = 1.0;
  a(j, i) = -1.0;
  return sp_embed(a, CMat::Zero(n, n));
}

Mat sp_a_imag(int n, int i, int j) { return sp_embed(kI * unit_sym(n, i, j), CMat::Zero(n, n)); }

Mat sp_b_real(int n, int i, int j) { return sp_embed(CMat::Zero(n, n), unit_sym(n, i, j)); }

Mat sp_b_imag(int n, int i, int j) { return sp_embed(CMat::Zero(n, n), kI * unit_sym(n, i, j)); }

std::vector<Mat> sp_basis(int n) {
  std::vector<Mat> out;
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      if (i != j) out.push_back(sp_a_real(n, i, j));
      out.push_back(sp_a_imag(n, i, j));
      out.push_back(sp_b_real(n, i, j));
      out.push_back(sp_b_imag(n, i, j));
    }
  }
  return out;
}

Mat complex_structure(int k) {
  Mat j = Mat::Zero(2 * k, 2 * k);
  j.block(k, 0, k, k) = Mat::Identity(k, k);
  j.block(0, k, k, k) = -Mat::Identity(k, k);
  return j;
}

Mat pad(const Mat& m, int n) { return place(m, n, 0); }

Mat place(const Mat& m, int n, int offset) {
  if (offset + m.rows() > n) throw Error(ErrorCode::DimensionMismatch, "place: block does not fit");
  Mat out = Mat::Zero(n, n);
  out.block(offset, offset, m.rows(), m.cols()) = m;
  return out;
}

}  // namespace gospace::classical
