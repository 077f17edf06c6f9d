#include "gospace/sampling.hpp"

#include <cmath>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "gospace/error.hpp"
#include "gospace/gocheck.hpp"
#include "gospace/random.hpp"

namespace gospace {

namespace {

double grid_exponent(int i) {
  return kLogGridLo + (kLogGridHi - kLogGridLo) * i / (kLogGridPoints - 1);
}

// Mixed-radix digits of a permuted index, so consecutive structured samples
// spread over the whole grid instead of sweeping one ratio at a time.
std::vector<int> grid_digits(long k, std::size_t ratios) {
  long cells = 1;
  for (std::size_t i = 0; i < ratios; ++i) cells *= kLogGridPoints;
  long idx = (k * 37) % cells;  // 37 is coprime to 13^n
  std::vector<int> d(ratios);
  for (std::size_t i = 0; i < ratios; ++i) {
    d[i] = static_cast<int>(idx % kLogGridPoints);
    idx /= kLogGridPoints;
  }
  return d;
}

}  // namespace

std::vector<Vec> sampling_plan(const Decomposition& dec, int samples, std::uint64_t seed) {
  if (samples < 0) throw Error(ErrorCode::InvalidArgument, "negative sample count");
  const std::size_t s = dec.size();
  const Eigen::Index n = dec.dim_m();
  Rng rng(seed);
  std::vector<Vec> out;
  out.reserve(static_cast<std::size_t>(samples));

  const int uniform = (samples + 1) / 2;
  for (int i = 0; i < uniform; ++i) out.push_back(unit_vector(rng, n));

  std::vector<Vec> v(s);
  for (std::size_t a = 0; a < s; ++a) v[a] = dec.summand(a).transpose() * unit_vector(rng, dec.summand(a).rows());

  for (int k = 0; uniform + k < samples; ++k) {
    Vec u = Vec::Zero(n);
    if (k % 7 == 6 && s > 1) {
      // degenerate: a single summand, cycling through them
      u = v[static_cast<std::size_t>(k / 7) % s];
    } else {
      const auto d = grid_digits(k, s - 1);
      u = v[0];
      for (std::size_t a = 1; a < s; ++a) u += std::pow(10.0, grid_exponent(d[a - 1])) * v[a];
    }
    out.push_back(u / u.norm());
  }
  return out;
}

namespace {

GoSample go_one(const HomogeneousSpace& space, const Decomposition& dec, const LFunction& l, const Vec& u) {
  GoSample r;
  if (!l.differentiable_at(dec.thetas(u))) {
    r.skipped = true;
    return r;
  }
  r.op_residual = go_check_operator(space, dec, l, u).residual;
  r.spray_residual = go_check_spray(space, dec, l, u);
  return r;
}

NrSample nr_one(const HomogeneousSpace& space, const Decomposition& dec, const LFunction& l, const Vec& u) {
  NrSample r;
  if (!l.differentiable_at(dec.thetas(u))) {
    r.skipped = true;
    return r;
  }
  r.residual = nr_residual(space, dec, l, u);
  return r;
}

// Runs f(i) for every index, in parallel when requested. Exceptions thrown
// inside the parallel region are captured and the first one (by index) is
// rethrown, matching what the serial loop would report.
template <class F>
void for_each_index(std::size_t n, Execution exec, F&& f) {
  if (exec == Execution::Serial) {
    for (std::size_t i = 0; i < n; ++i) f(i);
    return;
  }
  std::vector<std::exception_ptr> errors(n);
  const long count = static_cast<long>(n);
#pragma omp parallel for schedule(dynamic, 4)
  for (long i = 0; i < count; ++i) {
    try {
      f(static_cast<std::size_t>(i));
    } catch (...) {
      errors[static_cast<std::size_t>(i)] = std::current_exception();
    }
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

}  // namespace

std::vector<GoSample> evaluate_go(const HomogeneousSpace& space, const Decomposition& dec, const LFunction& l,
                                  const std::vector<Vec>& samples, Execution exec) {
  std::vector<GoSample> out(samples.size());
  for_each_index(samples.size(), exec, [&](std::size_t i) { out[i] = go_one(space, dec, l, samples[i]); });
  return out;
}

std::vector<NrSample> evaluate_nr(const HomogeneousSpace& space, const Decomposition& dec, const LFunction& l,
                                  const std::vector<Vec>& samples, Execution exec) {
  std::vector<NrSample> out(samples.size());
  for_each_index(samples.size(), exec, [&](std::size_t i) { out[i] = nr_one(space, dec, l, samples[i]); });
  return out;
}

int max_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

void set_threads(int n) {
#ifdef _OPENMP
  if (n > 0) omp_set_num_threads(n);
#else
  (void)n;
#endif
}

}  // namespace gospace
