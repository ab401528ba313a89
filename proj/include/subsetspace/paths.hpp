#pragma once

#include <cstddef>
#include <vector>

#include "subsetspace/relations.hpp"

namespace subsetspace {

/// One straight segment a -> b, traversed at constant speed.
struct Segment {
  Point from;
  Point to;
};

/// A path in X(n) given symbolically as a concatenation of legs. Each leg is
/// the family of segments of a complete relation, evaluated at a common
/// parameter; leg k covers [k/L, (k+1)/L] of the unit interval.
class SubsetPath {
 public:
  SubsetPath(NormDescriptor norm, std::vector<std::vector<Segment>> legs,
             std::size_t cardinality_bound);

  static SubsetPath constant(const FiniteSubset& x);

  const NormDescriptor& norm() const noexcept { return norm_; }
  const std::vector<std::vector<Segment>>& legs() const noexcept { return legs_; }
  std::size_t cardinality_bound() const noexcept { return bound_; }

  /// Gamma(t) for t in [0, 1]; endpoints are reproduced exactly.
  FiniteSubset sample(double t) const;

 private:
  NormDescriptor norm_;
  std::vector<std::vector<Segment>> legs_;
  std::size_t bound_;
};

std::vector<Segment> segments_of(const CompleteRelation& r);

/// Straight-line path over the pairs of r. Throws not-a-lambda-relation if
/// some pair is longer than lambda * d_H(x, y) + tol.
SubsetPath quasigeodesic_from_relation(const CompleteRelation& r, double lambda,
                                       double tol = kDefaultTolerance);

/// Path from x to y through z = x'' + y' whose length is at most 2 d_H(x,y)
/// and whose samples stay in X(max(|x|,|y|)).
SubsetPath two_quasiconvex_path(const FiniteSubset& x, const FiniteSubset& y);

/// Geodesic in X(N), N = max(|x|, |y|, |x|+|y|-2), along the reduced
/// proximal relation.
SubsetPath geodesic_in_larger_stratum(const FiniteSubset& x, const FiniteSubset& y);

/// max over grid pairs s != t of d_H(G(s),G(t)) / (|s-t| d_H(G(0),G(1))) on
/// the uniform grid with `grid` points.
double path_speed_profile(const SubsetPath& path, std::size_t grid);

/// Sum of d_H between consecutive samples on a uniform grid.
double path_length(const SubsetPath& path, std::size_t grid);

}  // namespace subsetspace
