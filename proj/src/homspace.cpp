#include "gospace/homspace.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "gospace/error.hpp"
#include "gospace/random.hpp"

namespace gospace {

namespace {

// Structure constants of g in the basis whose rows are `p` (p Q p^T = I).
StructureTensor change_basis(const LieAlgebra& g, const Mat& p) {
  const Eigen::Index n = g.dim();
  const Mat pq = p * g.q_form();
  StructureTensor c(n);
  std::vector<Mat> ad_rows;
  ad_rows.reserve(static_cast<std::size_t>(n));
  for (Eigen::Index a = 0; a < n; ++a) ad_rows.push_back(pq * g.ad(p.row(a).transpose()));
  for (Eigen::Index a = 0; a < n; ++a) {
    for (Eigen::Index b = a + 1; b < n; ++b) {
      const Vec v = ad_rows[a] * p.row(b).transpose();
      for (Eigen::Index k = 0; k < n; ++k) c.set(a, b, k, v(k));
    }
  }
  return c;
}

}  // namespace

HomogeneousSpace HomogeneousSpace::build(LieAlgebra g, const Mat& h_span, BuildTolerances tol) {
  const Eigen::Index n = g.dim();
  if (h_span.rows() > 0 && h_span.cols() != n) {
    throw Error(ErrorCode::DimensionMismatch, "h_span has wrong number of columns");
  }
  const Mat& q = g.q_form();
  const Mat h = h_span.rows() > 0 ? orthonormalize_rows(h_span, q) : Mat(0, n);
  const double qscale = q.norm();

  // [h, h] ⊆ h
  double closure = 0.0;
  for (Eigen::Index a = 0; a < h.rows(); ++a) {
    for (Eigen::Index b = a + 1; b < h.rows(); ++b) {
      const Vec br = g.bracket(h.row(a).transpose(), h.row(b).transpose());
      const Vec in_h = h.transpose() * (h * q * br);
      const double scale = std::max(1.0, std::sqrt(std::abs(br.dot(q * br))));
      closure = std::max(closure, std::sqrt(std::abs((br - in_h).dot(q * (br - in_h)))) / scale);
    }
  }
  if (closure > tol.closure) {
    throw Error(ErrorCode::NotSubalgebra,
                "span is not closed under the bracket (residual " + std::to_string(closure) + ")");
  }

  // m = Q-orthogonal complement of h
  Mat m_raw = h.rows() > 0 ? null_space(h * q) : Mat(Mat::Identity(n, n));
  const Mat m = orthonormalize_rows(m_raw, q);
  if (h.rows() + m.rows() != n) {
    throw Error(ErrorCode::ReductivityFailure, "h + m does not span g");
  }

  Mat p(n, n);
  p << h, m;
  HomogeneousSpace space(g, LieAlgebra(change_basis(g, p)));
  space.h_basis_ = h;
  space.m_basis_ = m;
  space.to_adapted_ = p * q;
  space.closure_residual_ = closure;
  space.orthogonality_residual_ =
      h.rows() > 0 && m.rows() > 0 ? max_abs(h * q * m.transpose()) / std::max(1.0, qscale) : 0.0;

  const Eigen::Index dh = h.rows();
  const Eigen::Index dm = m.rows();
  const LieAlgebra& ad = space.adapted_;
  double reductivity = 0.0;
  space.bracket_hm_.reserve(static_cast<std::size_t>(dh));
  space.bracket_hh_.reserve(static_cast<std::size_t>(dh));
  for (Eigen::Index a = 0; a < dh; ++a) {
    const Mat& full = ad.ad_basis(a);
    space.bracket_hm_.push_back(full.block(dh, dh, dm, dm));
    space.bracket_hh_.push_back(full.block(0, 0, dh, dh));
    if (dm > 0) {
      const double scale = std::max(1.0, full.norm());
      reductivity = std::max(reductivity, max_abs(full.block(0, dh, dh, dm)) / scale);
    }
  }
  space.reductivity_residual_ = reductivity;
  if (reductivity > tol.reductivity) {
    throw Error(ErrorCode::ReductivityFailure,
                "[h, m] has an h-component (residual " + std::to_string(reductivity) + ")");
  }
  space.bracket_mm_.reserve(static_cast<std::size_t>(dm));
  for (Eigen::Index a = 0; a < dm; ++a) {
    space.bracket_mm_.push_back(ad.ad_basis(dh + a).rightCols(dm));
  }
  return space;
}

Vec HomogeneousSpace::to_adapted(const Vec& v) const { return to_adapted_ * v; }

Vec HomogeneousSpace::from_adapted(const Vec& x) const {
  return h_basis_.transpose() * x.head(dim_h()) + m_basis_.transpose() * x.tail(dim_m());
}

Vec HomogeneousSpace::embed_h(const Vec& w) const {
  Vec x = Vec::Zero(dim_g());
  x.head(dim_h()) = w;
  return x;
}

Vec HomogeneousSpace::embed_m(const Vec& u) const {
  Vec x = Vec::Zero(dim_g());
  x.tail(dim_m()) = u;
  return x;
}

Vec HomogeneousSpace::bracket_mm(Eigen::Index a, Eigen::Index b) const {
  return bracket_mm_[static_cast<std::size_t>(a)].col(b);
}

Vec HomogeneousSpace::bracket_m(const Vec& x, const Vec& y) const {
  if (x.size() != dim_m() || y.size() != dim_m()) {
    throw Error(ErrorCode::DimensionMismatch, "bracket_m: expected m-coordinates");
  }
  Vec out = Vec::Zero(dim_g());
  for (Eigen::Index a = 0; a < dim_m(); ++a) {
    if (x(a) != 0.0) out.noalias() += x(a) * (bracket_mm_[static_cast<std::size_t>(a)] * y);
  }
  return out;
}

Mat HomogeneousSpace::h_action(const Vec& u) const {
  Mat out(dim_m(), dim_h());
  for (Eigen::Index a = 0; a < dim_h(); ++a) out.col(a) = bracket_hm_[static_cast<std::size_t>(a)] * u;
  return out;
}

Mat HomogeneousSpace::ad_m(const Vec& u) const {
  Mat out(dim_m(), dim_m());
  for (Eigen::Index b = 0; b < dim_m(); ++b) {
    out.col(b) = (bracket_mm_[static_cast<std::size_t>(b)] * u).tail(dim_m());
  }
  return out;
}

Decomposition::Decomposition(std::vector<Mat> summands) : summands_(std::move(summands)) {
  if (summands_.empty()) throw Error(ErrorCode::InvalidDecomposition, "no summands");
  dim_m_ = summands_.front().cols();
  for (const Mat& s : summands_) {
    if (s.cols() != dim_m_ || s.rows() == 0) {
      throw Error(ErrorCode::InvalidDecomposition, "summand bases must be non-empty with dim m columns");
    }
  }
}

std::vector<Eigen::Index> Decomposition::dims() const {
  std::vector<Eigen::Index> out;
  out.reserve(summands_.size());
  for (const Mat& s : summands_) out.push_back(s.rows());
  return out;
}

Vec Decomposition::project(const Vec& y, std::size_t a) const {
  return summands_[a].transpose() * (summands_[a] * y);
}

Vec Decomposition::local(const Vec& y, std::size_t a) const { return summands_[a] * y; }

Mat Decomposition::projector(std::size_t a) const { return summands_[a].transpose() * summands_[a]; }

Vec Decomposition::thetas(const Vec& y) const {
  Vec t(static_cast<Eigen::Index>(size()));
  for (std::size_t a = 0; a < size(); ++a) t(static_cast<Eigen::Index>(a)) = (summands_[a] * y).squaredNorm();
  return t;
}

DecompositionCheck check_decomposition(const HomogeneousSpace& space, const Decomposition& dec) {
  DecompositionCheck out;
  Eigen::Index total = 0;
  for (std::size_t a = 0; a < dec.size(); ++a) {
    const Mat& sa = dec.summand(a);
    total += sa.rows();
    out.orthogonality = std::max(
        out.orthogonality, max_abs(sa * sa.transpose() - Mat::Identity(sa.rows(), sa.rows())));
    for (std::size_t b = a + 1; b < dec.size(); ++b) {
      out.orthogonality = std::max(out.orthogonality, max_abs(sa * dec.summand(b).transpose()));
    }
  }
  out.completeness = std::abs(static_cast<double>(total - space.dim_m()));
  if (dec.dim_m() != space.dim_m()) out.completeness = std::max(out.completeness, 1.0);
  if (dec.dim_m() != space.dim_m()) return out;
  for (std::size_t a = 0; a < dec.size(); ++a) {
    const Mat p = dec.projector(a);
    const Mat& sa = dec.summand(a);
    for (Eigen::Index w = 0; w < space.dim_h(); ++w) {
      const Mat img = space.ad_h_on_m(w) * sa.transpose();
      out.invariance = std::max(out.invariance, max_abs(img - p * img));
    }
  }
  return out;
}

void validate_decomposition(const HomogeneousSpace& space, const Decomposition& dec, double tol) {
  const DecompositionCheck c = check_decomposition(space, dec);
  if (c.completeness != 0.0) {
    throw Error(ErrorCode::InvalidDecomposition, "summand dimensions do not add up to dim m");
  }
  if (c.orthogonality > tol) {
    throw Error(ErrorCode::InvalidDecomposition,
                "summands are not Q-orthonormal (residual " + std::to_string(c.orthogonality) + ")");
  }
  if (c.invariance > tol) {
    throw Error(ErrorCode::InvalidDecomposition,
                "summand not Ad(h)-invariant (residual " + std::to_string(c.invariance) + ")");
  }
}

Decomposition decomposition_from_g_rows(const HomogeneousSpace& space, const std::vector<Mat>& rows) {
  std::vector<Mat> summands;
  summands.reserve(rows.size());
  for (const Mat& r : rows) {
    Mat local(r.rows(), space.dim_m());
    for (Eigen::Index i = 0; i < r.rows(); ++i) {
      local.row(i) = space.m_coordinates(r.row(i).transpose()).transpose();
    }
    summands.push_back(row_span(local));
  }
  Decomposition dec(std::move(summands));
  validate_decomposition(space, dec);
  return dec;
}

std::vector<Mat> symmetric_commutant(const HomogeneousSpace& space) {
  const Eigen::Index dm = space.dim_m();
  const Eigen::Index dh = space.dim_h();
  const Eigen::Index params = dm * (dm + 1) / 2;
  std::vector<Mat> sym;
  sym.reserve(static_cast<std::size_t>(params));
  for (Eigen::Index p = 0; p < dm; ++p) {
    for (Eigen::Index q = p; q < dm; ++q) {
      Mat e = Mat::Zero(dm, dm);
      if (p == q) {
        e(p, p) = 1.0;
      } else {
        e(p, q) = e(q, p) = std::sqrt(0.5);
      }
      sym.push_back(std::move(e));
    }
  }
  if (dh == 0) return sym;

  Mat system(dh * dm * dm, params);
  for (Eigen::Index k = 0; k < params; ++k) {
    const Mat& e = sym[static_cast<std::size_t>(k)];
    for (Eigen::Index w = 0; w < dh; ++w) {
      const Mat& d = space.ad_h_on_m(w);
      const Mat comm = e * d - d * e;
      system.block(w * dm * dm, k, dm * dm, 1) = comm.reshaped();
    }
  }
  const Mat ker = null_space(system);
  std::vector<Mat> out;
  out.reserve(static_cast<std::size_t>(ker.rows()));
  for (Eigen::Index r = 0; r < ker.rows(); ++r) {
    Mat s = Mat::Zero(dm, dm);
    for (Eigen::Index k = 0; k < params; ++k) s += ker(r, k) * sym[static_cast<std::size_t>(k)];
    out.push_back(std::move(s));
  }
  return out;
}

Decomposition isotropy_decompose(const HomogeneousSpace& space, std::uint64_t seed, double cluster_rgap) {
  const Eigen::Index dm = space.dim_m();
  if (dm == 0) throw Error(ErrorCode::InvalidArgument, "isotropy_decompose: m is zero");
  const std::vector<Mat> commutant = symmetric_commutant(space);
  Rng rng(seed);
  const Vec coeff = gaussian_vector(rng, static_cast<Eigen::Index>(commutant.size()));
  Mat s = Mat::Zero(dm, dm);
  for (std::size_t k = 0; k < commutant.size(); ++k) s += coeff(static_cast<Eigen::Index>(k)) * commutant[k];

  Eigen::SelfAdjointEigenSolver<Mat> eig(s);
  const Vec& ev = eig.eigenvalues();
  const Mat& vecs = eig.eigenvectors();
  const double scale = std::max(ev.cwiseAbs().maxCoeff(), 1e-300);

  std::vector<Mat> summands;
  Eigen::Index start = 0;
  for (Eigen::Index i = 1; i <= dm; ++i) {
    if (i == dm || (ev(i) - ev(i - 1)) > cluster_rgap * scale) {
      summands.push_back(vecs.middleCols(start, i - start).transpose());
      start = i;
    }
  }
  Decomposition dec(std::move(summands));
  dec.commutant_dim = static_cast<Eigen::Index>(commutant.size());
  return dec;
}

Mat summand_brackets(const HomogeneousSpace& space, const Decomposition& dec, std::size_t i, std::size_t j) {
  const Mat& a = dec.summand(i);
  const Mat& b = dec.summand(j);
  Mat out(space.dim_g(), a.rows() * b.rows());
  for (Eigen::Index p = 0; p < a.rows(); ++p)
    for (Eigen::Index q = 0; q < b.rows(); ++q)
      out.col(p * b.rows() + q) = space.bracket_m(a.row(p).transpose(), b.row(q).transpose());
  return out;
}

double h_action_noise_floor(const HomogeneousSpace& space, double scale) {
  double ad = 0.0;
  for (Eigen::Index a = 0; a < space.dim_h(); ++a) ad += space.ad_h_on_m(a).squaredNorm();
  return 1e3 * std::numeric_limits<double>::epsilon() * scale * std::sqrt(ad);
}

Mat centralizer_in_h(const HomogeneousSpace& space, const Vec& u) {
  if (space.dim_h() == 0) return Mat(0, 0);
  return null_space(space.h_action(u), -1.0, h_action_noise_floor(space, u.norm()));
}

TildeCentralizer tilde_centralizer(const HomogeneousSpace& space, const Vec& u) {
  const Eigen::Index dh = space.dim_h();
  TildeCentralizer out;
  out.centralizer = centralizer_in_h(space, u);
  if (dh == 0) {
    out.normalizer = Mat(0, 0);
    out.tilde = Mat(0, 0);
    return out;
  }
  const Mat& c = out.centralizer;
  if (c.rows() == 0) {
    out.normalizer = Mat::Identity(dh, dh);
    out.tilde = Mat::Identity(dh, dh);
    return out;
  }
  const Mat perp = Mat::Identity(dh, dh) - c.transpose() * c;
  // w in N  <=>  perp [w, c_j] = 0 for every j;  [w, c_j] = -ad(c_j)|_h w
  Mat system(c.rows() * dh, dh);
  for (Eigen::Index j = 0; j < c.rows(); ++j) {
    Mat ad_c = Mat::Zero(dh, dh);
    for (Eigen::Index a = 0; a < dh; ++a) {
      if (c(j, a) != 0.0) ad_c += c(j, a) * space.ad_h_on_h(a);
    }
    system.block(j * dh, 0, dh, dh) = perp * ad_c;
  }
  double ad = 0.0;
  for (Eigen::Index a = 0; a < dh; ++a) ad += space.ad_h_on_h(a).squaredNorm();
  out.normalizer = null_space(system, -1.0, 1e3 * std::numeric_limits<double>::epsilon() * std::sqrt(ad));
  // rows of normalizer * perp are at most unit length; anything near eps is C itself
  out.tilde = row_span(out.normalizer * perp, -1.0, 1e3 * std::numeric_limits<double>::epsilon());
  return out;
}

}  // namespace gospace
