#include <algorithm>
#include <cmath>

#include "subsetspace/error.hpp"
#include "subsetspace/verify.hpp"

namespace subsetspace {

namespace {

double uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

double log_uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::exp(uniform(rng, std::log(lo), std::log(hi)));
}

std::size_t uniform_index(std::mt19937_64& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

std::vector<double> box_point(const SamplerSpec& s, std::mt19937_64& rng) {
  std::vector<double> c(static_cast<std::size_t>(s.norm.dim));
  for (double& v : c) v = uniform(rng, -s.box, s.box);
  return c;
}

/// Random direction of unit length in the ambient (plain) p-norm.
std::vector<double> unit_vector(const SamplerSpec& s, std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  std::vector<double> c(static_cast<std::size_t>(s.norm.dim));
  double nrm = 0.0;
  while (nrm == 0.0) {
    for (double& v : c) v = normal(rng);
    nrm = pnorm(s.norm.p, c);
  }
  for (double& v : c) v /= nrm;
  return c;
}

std::vector<double> offset(const std::vector<double>& a, const std::vector<double>& dir, double r) {
  std::vector<double> c(a);
  for (std::size_t k = 0; k < c.size(); ++k) c[k] += r * dir[k];
  return c;
}

FiniteSubset make_set(const SamplerSpec& s, std::vector<std::vector<double>> coords) {
  return FiniteSubset::from_coords(s.norm, coords);
}

std::size_t draw_size(const SamplerSpec& s, std::mt19937_64& rng) {
  return uniform_index(rng, s.min_points, s.max_points);
}

std::vector<std::vector<double>> uniform_coords(const SamplerSpec& s, std::mt19937_64& rng,
                                                std::size_t k) {
  std::vector<std::vector<double>> c;
  for (std::size_t i = 0; i < k; ++i) c.push_back(box_point(s, rng));
  return c;
}

/// Random configuration with one pair much closer than the others.
std::vector<std::vector<double>> near_collision_coords(const SamplerSpec& s, std::mt19937_64& rng,
                                                       std::size_t k) {
  auto c = uniform_coords(s, rng, k);
  if (k >= 2) c[1] = offset(c[0], unit_vector(s, rng), s.box * log_uniform(rng, 1e-7, 1e-3));
  return c;
}

/// Configurations whose partition-of-unity argument sits near a breakpoint.
std::vector<std::vector<double>> breakpoint_coords(const SamplerSpec& s, std::mt19937_64& rng,
                                                   std::size_t k) {
  const double scale = s.box * log_uniform(rng, 0.1, 1.0);
  const std::vector<double> base = box_point(s, rng);
  const double jitter = uniform(rng, -0.02, 0.02);
  if (s.family == BreakpointFamily::ThreePoint) {
    const double target = (uniform_index(rng, 0, 1) == 0 ? 0.2 : 0.25) * (1.0 + jitter);
    const std::vector<double> b = unit_vector(s, rng);
    const std::vector<double> far = offset(base, b, scale);
    std::vector<double> mid;
    for (int attempt = 0; attempt < 64; ++attempt) {
      mid = offset(base, unit_vector(s, rng), target * scale);
      std::vector<double> diff(mid);
      for (std::size_t q = 0; q < diff.size(); ++q) diff[q] -= far[q];
      const double r = pnorm(s.norm.p, diff);
      if (r <= scale && r >= target * scale) break;
    }
    std::vector<std::vector<double>> c{base, far, mid};
    if (k < 3) c.resize(std::max<std::size_t>(k, 1));
    return c;
  }
  // Two clusters at unit distance; one of them has Chebyshev radius near the
  // skeleton breakpoints.
  const double target = uniform_index(rng, 0, 1) == 0 ? 1.0 / (3.0 * s.tau) : 1.0 / (2.0 * s.tau);
  const double radius = target * (1.0 + jitter) * scale;
  const std::vector<double> other = offset(base, unit_vector(s, rng), scale);
  const std::vector<double> w = unit_vector(s, rng);
  std::vector<std::vector<double>> c{offset(base, w, -radius), offset(base, w, radius), other};
  while (c.size() < k) {
    const std::vector<double>& centre = uniform_index(rng, 0, 1) == 0 ? base : other;
    c.push_back(offset(centre, unit_vector(s, rng), uniform(rng, 0.0, 0.5) * radius));
  }
  if (k < 3) c.resize(std::max<std::size_t>(k, 1));
  return c;
}

/// Nearby set with the same or a neighbouring cardinality.
FiniteSubset perturb(const SamplerSpec& s, const FiniteSubset& x, std::mt19937_64& rng) {
  const double eps = s.box * log_uniform(rng, 1e-6, 1e-1);
  std::vector<std::vector<double>> c;
  for (const Point& p : x) c.push_back(offset(p.coords(), unit_vector(s, rng), eps * uniform(rng, 0.0, 1.0)));
  const double u = uniform(rng, 0.0, 1.0);
  if (u < 0.15 && c.size() < s.max_points) {
    const std::size_t i = uniform_index(rng, 0, c.size() - 1);
    c.push_back(offset(x[i].coords(), unit_vector(s, rng), eps));
  } else if (u < 0.3 && c.size() > std::max<std::size_t>(s.min_points, 1)) {
    c.erase(c.begin() + static_cast<std::ptrdiff_t>(uniform_index(rng, 0, c.size() - 1)));
  }
  FiniteSubset y = make_set(s, std::move(c));
  return y;
}

FiniteSubset sample_with(SamplerKind kind, const SamplerSpec& s, std::mt19937_64& rng) {
  const std::size_t k = draw_size(s, rng);
  switch (kind) {
    case SamplerKind::NearCollision: return make_set(s, near_collision_coords(s, rng, k));
    case SamplerKind::Breakpoint: return make_set(s, breakpoint_coords(s, rng, k));
    default: return make_set(s, uniform_coords(s, rng, k));
  }
}

}  // namespace

std::string to_string(SamplerKind kind) {
  switch (kind) {
    case SamplerKind::Uniform: return "uniform";
    case SamplerKind::NearCollision: return "near-collision";
    case SamplerKind::Breakpoint: return "breakpoint";
    case SamplerKind::Mixed: return "mixed";
  }
  return "unknown";
}

std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t trial) {
  // splitmix64 over the combined stream position.
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (trial + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

SamplerKind pick_regime(const SamplerSpec& spec, std::mt19937_64& rng) {
  if (spec.kind != SamplerKind::Mixed) return spec.kind;
  const double total = spec.w_uniform + spec.w_near + spec.w_breakpoint;
  const double u = uniform(rng, 0.0, total);
  if (u < spec.w_uniform) return SamplerKind::Uniform;
  if (u < spec.w_uniform + spec.w_near) return SamplerKind::NearCollision;
  return SamplerKind::Breakpoint;
}

FiniteSubset sample_subset(const SamplerSpec& spec, std::mt19937_64& rng) {
  if (spec.min_points < 1 || spec.min_points > spec.max_points)
    throw Error(ErrorCode::InvalidInput, "sampler needs 1 <= min_points <= max_points");
  return sample_with(pick_regime(spec, rng), spec, rng);
}

SubsetPair sample_pair(const SamplerSpec& spec, std::mt19937_64& rng) {
  if (spec.min_points < 1 || spec.min_points > spec.max_points)
    throw Error(ErrorCode::InvalidInput, "sampler needs 1 <= min_points <= max_points");
  const SamplerKind kind = pick_regime(spec, rng);
  FiniteSubset x = sample_with(kind, spec, rng);
  // Uniform pairs are independent half of the time; otherwise y is a local
  // perturbation, which probes the small-distance end of the ratio.
  if (kind == SamplerKind::Uniform && uniform(rng, 0.0, 1.0) < 0.5) {
    FiniteSubset y = sample_with(kind, spec, rng);
    return {std::move(x), std::move(y)};
  }
  FiniteSubset y = perturb(spec, x, rng);
  return {std::move(x), std::move(y)};
}

}  // namespace subsetspace
