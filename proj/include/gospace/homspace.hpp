#pragma once

// Reductive pairs (g, h) with the Q-orthogonal complement m, and
// Ad(h)-invariant splittings of m.
//
// Coordinates: after build() every vector is expressed in an adapted
// Q-orthonormal basis of g whose first dim_h() elements span h and whose
// remaining dim_m() elements span m. "h-coordinates" and "m-coordinates"
// refer to the two blocks of that basis; Q is the identity in both.

#include <cstdint>
#include <vector>

#include "gospace/liealg.hpp"

namespace gospace {

struct BuildTolerances {
  double closure = 1e-10;      // [h,h] ⊆ h, relative
  double reductivity = 1e-10;  // [h,m] ⊆ m, relative
};

class HomogeneousSpace {
 public:
  /// h_span: rows are vectors of g (in the basis of `g`) spanning h.
  /// Errors: NotSubalgebra, ReductivityFailure.
  static HomogeneousSpace build(LieAlgebra g, const Mat& h_span, BuildTolerances tol = {});

  const LieAlgebra& g() const { return g_; }
  /// g re-expressed in the adapted basis (Q = I up to rounding).
  const LieAlgebra& adapted() const { return adapted_; }

  Eigen::Index dim_g() const { return g_.dim(); }
  Eigen::Index dim_h() const { return h_basis_.rows(); }
  Eigen::Index dim_m() const { return m_basis_.rows(); }

  /// Q-orthonormal bases in the coordinates of the original `g`.
  const Mat& h_basis() const { return h_basis_; }
  const Mat& m_basis() const { return m_basis_; }

  /// Original g-coordinates -> adapted coordinates, and back.
  Vec to_adapted(const Vec& v) const;
  Vec from_adapted(const Vec& x) const;
  Vec m_coordinates(const Vec& v) const { return to_adapted(v).tail(dim_m()); }

  Vec embed_h(const Vec& w) const;
  Vec embed_m(const Vec& u) const;

  /// Bracket of two adapted-coordinate vectors.
  Vec bracket(const Vec& x, const Vec& y) const { return adapted_.bracket(x, y); }

  /// ad(h_a) restricted to m, as a dim_m x dim_m matrix (skew-symmetric).
  const Mat& ad_h_on_m(Eigen::Index a) const { return bracket_hm_[static_cast<std::size_t>(a)]; }
  /// ad(h_a) restricted to h.
  const Mat& ad_h_on_h(Eigen::Index a) const { return bracket_hh_[static_cast<std::size_t>(a)]; }

  /// [e_a, e_b] for m-basis vectors e_a, e_b, in full adapted coordinates.
  Vec bracket_mm(Eigen::Index a, Eigen::Index b) const;

  /// [x, y] for x, y in m-coordinates; full adapted coordinates.
  Vec bracket_m(const Vec& x, const Vec& y) const;

  /// dim_m x dim_h matrix whose column a is [h_a, u] (in m-coordinates).
  Mat h_action(const Vec& u) const;

  /// dim_m x dim_m matrix whose column b is [e_b, u]_m.
  Mat ad_m(const Vec& u) const;

  /// Residuals recorded at build time.
  double closure_residual() const { return closure_residual_; }
  double reductivity_residual() const { return reductivity_residual_; }
  double orthogonality_residual() const { return orthogonality_residual_; }

 private:
  HomogeneousSpace(LieAlgebra g, LieAlgebra adapted) : g_(std::move(g)), adapted_(std::move(adapted)) {}

  LieAlgebra g_;
  LieAlgebra adapted_;
  Mat h_basis_;
  Mat m_basis_;
  Mat to_adapted_;  // P Q
  std::vector<Mat> bracket_hm_;
  std::vector<Mat> bracket_hh_;
  std::vector<Mat> bracket_mm_;  // per m-basis element a: dim_g x dim_m, column b = [e_a, e_b]
  double closure_residual_ = 0.0;
  double reductivity_residual_ = 0.0;
  double orthogonality_residual_ = 0.0;
};

/// Ordered Q-orthogonal splitting m = m_1 + ... + m_s. Summand bases are
/// orthonormal rows in m-coordinates.
class Decomposition {
 public:
  Decomposition() = default;
  explicit Decomposition(std::vector<Mat> summands);

  std::size_t size() const { return summands_.size(); }
  const Mat& summand(std::size_t a) const { return summands_[a]; }
  const std::vector<Mat>& summands() const { return summands_; }
  std::vector<Eigen::Index> dims() const;
  Eigen::Index dim_m() const { return dim_m_; }

  /// Component of y in m_a, in m-coordinates.
  Vec project(const Vec& y, std::size_t a) const;
  /// Coordinates of the m_a component in the summand basis (length n_a).
  Vec local(const Vec& y, std::size_t a) const;
  /// Orthogonal projector onto m_a (dim_m x dim_m).
  Mat projector(std::size_t a) const;
  /// (alpha_1^2(y_1), ..., alpha_s^2(y_s)).
  Vec thetas(const Vec& y) const;

  /// Dimension of the symmetric commutant seen by isotropy_decompose (0 when
  /// the decomposition was supplied by hand).
  Eigen::Index commutant_dim = 0;
  bool non_unique() const { return commutant_dim > static_cast<Eigen::Index>(size()); }

 private:
  std::vector<Mat> summands_;
  Eigen::Index dim_m_ = 0;
};

/// Residuals of the Decomposition invariants against a space.
struct DecompositionCheck {
  double orthogonality = 0.0;  // max |Q(m_a, m_b)|, a != b, plus basis orthonormality
  double completeness = 0.0;   // |sum dims - dim m| (0 or >= 1)
  double invariance = 0.0;     // max ||[h, m_a] - proj_a [h, m_a]||
};
DecompositionCheck check_decomposition(const HomogeneousSpace& space, const Decomposition& dec);

/// Throws InvalidDecomposition when any residual exceeds tol.
void validate_decomposition(const HomogeneousSpace& space, const Decomposition& dec, double tol = 1e-9);

/// [a, b] in full adapted coordinates for a over the basis of m_i and b over
/// the basis of m_j, one column per pair.
Mat summand_brackets(const HomogeneousSpace& space, const Decomposition& dec, std::size_t i, std::size_t j);

/// Builds a Decomposition from subspaces given as rows in the original
/// g-coordinates (converted to m-coordinates and orthonormalized).
Decomposition decomposition_from_g_rows(const HomogeneousSpace& space, const std::vector<Mat>& rows);

/// Splits m by eigen-clustering a seeded random element of the symmetric
/// commutant of ad(h)|_m.
Decomposition isotropy_decompose(const HomogeneousSpace& space, std::uint64_t seed,
                                 double cluster_rgap = 1e-6);

/// Symmetric matrices on m commuting with every ad(h_a)|_m (orthonormal basis
/// in the Frobenius inner product).
std::vector<Mat> symmetric_commutant(const HomogeneousSpace& space);

/// Rounding level of h_action(v) for ||v|| = scale: exact null directions
/// come out near eps * scale * ||ad(h)|_m||, which can exceed a cutoff
/// relative to the largest singular value when v is (nearly) centralized.
double h_action_noise_floor(const HomogeneousSpace& space, double scale);

/// C_h(U): orthonormal rows in h-coordinates.
Mat centralizer_in_h(const HomogeneousSpace& space, const Vec& u);

/// N_h(C_h(U)) and its Q-orthogonal complement of C_h(U).
struct TildeCentralizer {
  Mat centralizer;
  Mat normalizer;
  Mat tilde;
};
TildeCentralizer tilde_centralizer(const HomogeneousSpace& space, const Vec& u);

}  // namespace gospace
