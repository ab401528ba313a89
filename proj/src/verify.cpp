#include "subsetspace/verify.hpp"

#include <cmath>
#include <exception>

#include "subsetspace/error.hpp"

#if SUBSETSPACE_HAVE_OPENMP
#include <omp.h>
#endif

namespace subsetspace {

namespace {

struct Trial {
  double value;  // ratio, or margin for the Hoelder check
  bool used;
};

Trial lipschitz_trial(const SubsetMap& map, const SamplerSpec& sampler, std::uint64_t seed,
                      std::size_t i, double min_distance) {
  std::mt19937_64 rng(trial_seed(seed, i));
  const auto [x, y] = sample_pair(sampler, rng);
  const double dh = hausdorff(x, y);
  if (dh < min_distance) return {0.0, false};
  return {hausdorff(map(x), map(y)) / dh, true};
}

Trial holder_trial(const SubsetMap& map, std::size_t n, const SamplerSpec& sampler,
                   std::uint64_t seed, std::size_t i) {
  std::mt19937_64 rng(trial_seed(seed, i));
  const auto [x, y] = sample_pair(sampler, rng);
  return {holder_bound(n, x, y) - hausdorff(map(x), map(y)), true};
}

SubsetPair replay(const SamplerSpec& sampler, std::uint64_t seed, std::size_t i) {
  std::mt19937_64 rng(trial_seed(seed, i));
  return sample_pair(sampler, rng);
}

void require_trials(std::size_t trials) {
  if (trials < 1) throw Error(ErrorCode::InvalidInput, "trials must be >= 1");
}

/// Index of the best trial under `better`, ties to the lowest index.
struct Best {
  double value;
  std::size_t index;
  std::size_t used;
};

template <class Better>
void absorb(Best& acc, const Best& other, Better better) {
  acc.used += other.used;
  if (other.index == SIZE_MAX) return;
  if (acc.index == SIZE_MAX || better(other.value, acc.value) ||
      (other.value == acc.value && other.index < acc.index)) {
    acc.value = other.value;
    acc.index = other.index;
  }
}

template <class TrialFn, class Better>
Best run_serial(std::size_t trials, TrialFn trial, Better better) {
  Best acc{0.0, SIZE_MAX, 0};
  for (std::size_t i = 0; i < trials; ++i) {
    const Trial t = trial(i);
    if (t.used) absorb(acc, {t.value, i, 1}, better);
  }
  return acc;
}

template <class TrialFn, class Better>
Best run_parallel(std::size_t trials, TrialFn trial, Better better) {
#if SUBSETSPACE_HAVE_OPENMP
  Best acc{0.0, SIZE_MAX, 0};
  std::exception_ptr failure;
  const auto count = static_cast<long long>(trials);
#pragma omp parallel
  {
    Best local{0.0, SIZE_MAX, 0};
#pragma omp for schedule(dynamic, 16) nowait
    for (long long i = 0; i < count; ++i) {
      try {
        const Trial t = trial(static_cast<std::size_t>(i));
        if (t.used) absorb(local, {t.value, static_cast<std::size_t>(i), 1}, better);
      } catch (...) {
#pragma omp critical(subsetspace_failure)
        if (!failure) failure = std::current_exception();
      }
    }
#pragma omp critical(subsetspace_reduce)
    absorb(acc, local, better);
  }
  if (failure) std::rethrow_exception(failure);
  return acc;
#else
  return run_serial(trials, trial, better);
#endif
}

template <class Runner>
LipschitzEstimate lipschitz_with(Runner runner, const std::string& name, const SubsetMap& map,
                                 const SamplerSpec& sampler, std::size_t trials,
                                 std::uint64_t seed, double min_distance) {
  require_trials(trials);
  const Best best = runner(
      trials, [&](std::size_t i) { return lipschitz_trial(map, sampler, seed, i, min_distance); },
      [](double a, double b) { return a > b; });
  if (best.index == SIZE_MAX)
    throw Error(ErrorCode::NoData, "every sampled pair was degenerate");
  LipschitzEstimate e;
  e.map = name;
  e.trials = trials;
  e.used = best.used;
  e.max_ratio = best.value;
  e.argmax = replay(sampler, seed, best.index);
  e.argmax_trial = best.index;
  e.sampler = sampler;
  e.seed = seed;
  return e;
}

template <class Runner>
HolderReport holder_with(Runner runner, const SubsetMap& map, std::size_t n,
                         const SamplerSpec& sampler, std::size_t trials, std::uint64_t seed) {
  require_trials(trials);
  const Best best = runner(
      trials, [&](std::size_t i) { return holder_trial(map, n, sampler, seed, i); },
      [](double a, double b) { return a < b; });
  HolderReport r;
  r.n = n;
  r.trials = trials;
  r.worst_margin = best.value;
  r.argmin = replay(sampler, seed, best.index);
  r.argmin_trial = best.index;
  return r;
}

struct SerialRunner {
  template <class F, class B>
  Best operator()(std::size_t trials, F f, B b) const { return run_serial(trials, f, b); }
};

struct ParallelRunner {
  template <class F, class B>
  Best operator()(std::size_t trials, F f, B b) const { return run_parallel(trials, f, b); }
};

}  // namespace

double holder_bound(std::size_t n, const FiniteSubset& x, const FiniteSubset& y) {
  if (n < 1) throw Error(ErrorCode::InvalidInput, "n must be >= 1");
  const double k = 2.0 * static_cast<double>(n) - 1.0;
  const double diam = diameter(set_union(x, y));
  const double dh = hausdorff(x, y);
  return static_cast<double>(n) * k * std::pow(diam, 1.0 - 1.0 / k) * std::pow(dh, 1.0 / k);
}

LipschitzEstimate estimate_lipschitz(const std::string& name, const SubsetMap& map,
                                     const SamplerSpec& sampler, std::size_t trials,
                                     std::uint64_t seed, double min_distance) {
  return lipschitz_with(ParallelRunner{}, name, map, sampler, trials, seed, min_distance);
}

HolderReport check_holder(const SubsetMap& map, std::size_t n, const SamplerSpec& sampler,
                          std::size_t trials, std::uint64_t seed) {
  return holder_with(ParallelRunner{}, map, n, sampler, trials, seed);
}

namespace serial {

LipschitzEstimate estimate_lipschitz(const std::string& name, const SubsetMap& map,
                                     const SamplerSpec& sampler, std::size_t trials,
                                     std::uint64_t seed, double min_distance) {
  return lipschitz_with(SerialRunner{}, name, map, sampler, trials, seed, min_distance);
}

HolderReport check_holder(const SubsetMap& map, std::size_t n, const SamplerSpec& sampler,
                          std::size_t trials, std::uint64_t seed) {
  return holder_with(SerialRunner{}, map, n, sampler, trials, seed);
}

}  // namespace serial

}  // namespace subsetspace
