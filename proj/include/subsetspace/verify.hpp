#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "subsetspace/subsets.hpp"

namespace subsetspace {

using SubsetMap = std::function<FiniteSubset(const FiniteSubset&)>;
using SubsetPair = std::pair<FiniteSubset, FiniteSubset>;

/// Euclidean distance from q to Conv(vertices), ignoring the ambient norm.
double distance_to_hull(const Point& q, const std::vector<Point>& vertices);

// ---------------------------------------------------------------------------
// Samplers

enum class SamplerKind { Uniform, NearCollision, Breakpoint, Mixed };

enum class BreakpointFamily {
  /// Closest-pair ratio near 1/5 or 1/4 (three-point interpolation).
  ThreePoint,
  /// dist to X(2) over diameter near 1/(3 tau) or 1/(2 tau).
  Skeleton,
};

struct SamplerSpec {
  SamplerKind kind = SamplerKind::Uniform;
  NormDescriptor norm{};
  std::size_t min_points = 1;
  std::size_t max_points = 4;
  /// Points are drawn from [-box, box]^dim.
  double box = 1.0;
  BreakpointFamily family = BreakpointFamily::ThreePoint;
  double tau = 7.0;
  /// Mixed-sampler weights (uniform, near-collision, breakpoint).
  double w_uniform = 0.4;
  double w_near = 0.3;
  double w_breakpoint = 0.3;
};

std::string to_string(SamplerKind kind);

/// Seed of trial i: independent of the thread that runs it.
std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t trial);

FiniteSubset sample_subset(const SamplerSpec& spec, std::mt19937_64& rng);
SubsetPair sample_pair(const SamplerSpec& spec, std::mt19937_64& rng);
/// Regime actually used by sample_pair for a Mixed spec (for coverage
/// accounting); identity for the other kinds.
SamplerKind pick_regime(const SamplerSpec& spec, std::mt19937_64& rng);

// ---------------------------------------------------------------------------
// Estimators

struct LipschitzEstimate {
  std::string map;
  std::size_t trials = 0;
  std::size_t used = 0;
  double max_ratio = 0.0;
  std::optional<SubsetPair> argmax;
  std::size_t argmax_trial = 0;
  SamplerSpec sampler;
  std::uint64_t seed = 0;
};

struct HolderReport {
  std::size_t n = 0;
  std::size_t trials = 0;
  double worst_margin = kInf;
  std::optional<SubsetPair> argmin;
  std::size_t argmin_trial = 0;
};

/// Right-hand side n(2n-1) diam(x u y)^{1-1/(2n-1)} d_H(x,y)^{1/(2n-1)}.
double holder_bound(std::size_t n, const FiniteSubset& x, const FiniteSubset& y);

/// max over sampled pairs of d_H(f x, f y) / d_H(x, y), skipping pairs with
/// d_H(x, y) < min_distance. OpenMP-parallel when available; results do not
/// depend on the thread count.
LipschitzEstimate estimate_lipschitz(const std::string& name, const SubsetMap& map,
                                     const SamplerSpec& sampler, std::size_t trials,
                                     std::uint64_t seed,
                                     double min_distance = kDefaultTolerance);

/// min over sampled pairs of holder_bound - d_H(f x, f y).
HolderReport check_holder(const SubsetMap& map, std::size_t n, const SamplerSpec& sampler,
                          std::size_t trials, std::uint64_t seed);

/// Reference single-threaded versions of the estimators.
namespace serial {
LipschitzEstimate estimate_lipschitz(const std::string& name, const SubsetMap& map,
                                     const SamplerSpec& sampler, std::size_t trials,
                                     std::uint64_t seed,
                                     double min_distance = kDefaultTolerance);
HolderReport check_holder(const SubsetMap& map, std::size_t n, const SamplerSpec& sampler,
                          std::size_t trials, std::uint64_t seed);
}  // namespace serial

// ---------------------------------------------------------------------------
// Fixtures

/// x = {0, m-1, m+1, (i-2)m+1 for i >= 4}, y = {-1, 1, m, (i-2)m+2} on R.
SubsetPair spaced_pair(std::size_t n, double m);

/// min over sampled z in X(n) of max(d_H(x,z), d_H(z,y)); z is drawn from
/// perturbations of x and y, midpoint-type combinations, and random sets.
double spaced_pair_obstruction(const FiniteSubset& x, const FiniteSubset& y, std::size_t n,
                               std::size_t samples, std::uint64_t seed);

struct BipHexagon {
  FiniteSubset x, y, z;
  double radius = 0.5;
};

/// Opposite vertex pairs of the unit-side regular hexagon in the plane,
/// optionally rotated.
BipHexagon bip_hexagon(double rotation = 0.0);

struct BipCheck {
  double max_pairwise = 0.0;
  bool pairwise_intersect = false;
  bool common_point_found = false;
  std::size_t grid = 0;
};

/// Pairwise d_H <= 2 r, and a grid search for w in X(2) within r + tol of all
/// three centers; w ranges over pairs of grid points on [-1.5, 1.5]^2.
BipCheck verify_bip_hexagon(const BipHexagon& h, std::size_t grid = 401, double tol = 0.01);

}  // namespace subsetspace
