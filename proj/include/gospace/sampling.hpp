#pragma once

// Sampling plan and the per-sample evaluation kernels. Every kernel has an
// OpenMP implementation and a serial reference; both write results by sample
// index, so their outputs are identical element for element.

#include <cstdint>
#include <vector>

#include "gospace/finsler.hpp"

namespace gospace {

enum class Execution { Serial, Parallel };

/// Half Q-uniform unit vectors on m, half structured u = sum t_a v_a with
/// fixed per-summand unit vectors v_a and (t_2/t_1, ..., t_s/t_1) on a log
/// grid; every seventh structured sample drops some summands entirely.
std::vector<Vec> sampling_plan(const Decomposition& dec, int samples, std::uint64_t seed);

/// Exponents of the structured half (base 10), shared with the tests.
inline constexpr double kLogGridLo = -3.0;
inline constexpr double kLogGridHi = 3.0;
inline constexpr int kLogGridPoints = 13;

struct GoSample {
  double op_residual = 0.0;
  double spray_residual = 0.0;
  bool skipped = false;  // sample lies on a face where L is not differentiable
};

struct NrSample {
  double residual = 0.0;
  bool skipped = false;
};

std::vector<GoSample> evaluate_go(const HomogeneousSpace& space, const Decomposition& dec,
                                  const LFunction& l, const std::vector<Vec>& samples,
                                  Execution exec = Execution::Parallel);

std::vector<NrSample> evaluate_nr(const HomogeneousSpace& space, const Decomposition& dec,
                                  const LFunction& l, const std::vector<Vec>& samples,
                                  Execution exec = Execution::Parallel);

/// Number of OpenMP threads (1 when built without OpenMP).
int max_threads();
void set_threads(int n);

}  // namespace gospace
