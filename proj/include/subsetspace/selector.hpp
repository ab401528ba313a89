#pragma once

#include "subsetspace/subsets.hpp"

namespace subsetspace {

/// Number of sphere directions used by the Monte Carlo Steiner point in
/// dimension >= 3.
inline constexpr std::size_t kSteinerSamples = 100000;

/// Steiner point of Conv(x): the mean over unit directions u of the support
/// point argmax_{a in x} <u, a>. Midpoint in dimension 1, exterior-angle
/// weighted hull vertices in dimension 2, Monte Carlo over a fixed seeded
/// direction set in dimension >= 3.
Point steiner_point(const FiniteSubset& x);

namespace detail {
/// Convex hull vertices in counterclockwise order (planar input only).
std::vector<Point> planar_hull(const FiniteSubset& x);
}  // namespace detail

}  // namespace subsetspace
