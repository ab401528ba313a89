#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "subsetspace/subsets.hpp"

namespace subsetspace {

/// Ordered n-tuple of points (not a set: coincidences are meaningful).
using Configuration = std::vector<Point>;

/// -J(u): component i is -sum_{j != i} (u_i - u_j) / |u_i - u_j|_p.
/// Throws singular-field on coincident points.
Configuration flow_field(std::span<const Point> u);

struct FlowOptions {
  /// Target stratum X(n); 0 means |x|.
  std::size_t n = 0;
  /// Stop threshold on the minimum separation; <= 0 selects 1e-6 * delta(x).
  double merge_tol = 0.0;
  double rk_tol = 1e-9;
  std::size_t max_steps = 1000000;
  bool record_trajectory = true;
};

struct FlowSample {
  double time;
  Configuration config;
};

struct FlowResult {
  std::vector<FlowSample> trajectory;
  double collision_time = 0.0;
  FiniteSubset output;
  double merge_tolerance = 0.0;
  std::size_t steps = 0;
};

/// r(x) = u(T(x)) from the collision flow, with single-linkage merging at
/// the stopping threshold.
FlowResult flow_retract(const FiniteSubset& x, const FlowOptions& options = {});

/// u_i(t) = x_i - J_i(x) t for a two-point set; 0 <= t <= |x_1 - x_2| / 2.
Configuration flow_closed_form_n2(const FiniteSubset& x, double t);

}  // namespace subsetspace
