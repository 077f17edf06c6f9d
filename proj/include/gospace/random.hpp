#pragma once

#include <cstdint>
#include <random>

#include "gospace/linalg.hpp"

namespace gospace {

using Rng = std::mt19937_64;

inline Vec gaussian_vector(Rng& rng, Eigen::Index n) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Vec v(n);
  for (Eigen::Index i = 0; i < n; ++i) v(i) = normal(rng);
  return v;
}

/// Uniform point on the Euclidean unit sphere of R^n (n >= 1).
inline Vec unit_vector(Rng& rng, Eigen::Index n) {
  Vec v = gaussian_vector(rng, n);
  while (v.norm() == 0.0) v = gaussian_vector(rng, n);
  return v / v.norm();
}

}  // namespace gospace
