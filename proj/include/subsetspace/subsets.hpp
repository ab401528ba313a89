#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "subsetspace/norms.hpp"

namespace subsetspace {

/// A nonempty finite subset of the ambient normed space, i.e. an element of
/// X(n) for every n >= size(). Points are stored deduplicated (exact
/// coordinate equality) in lexicographic order, so two subsets are equal as
/// sets iff their point sequences are equal.
class FiniteSubset {
 public:
  FiniteSubset(NormDescriptor norm, std::vector<Point> points);

  static FiniteSubset from_coords(NormDescriptor norm,
                                  const std::vector<std::vector<double>>& coords);
  /// Convenience for the real line with the given norm exponent.
  static FiniteSubset on_line(std::initializer_list<double> values, double p = 2.0,
                              double epsilon = 1.0);

  const NormDescriptor& norm() const noexcept { return norm_; }
  std::size_t size() const noexcept { return points_.size(); }
  const std::vector<Point>& points() const noexcept { return points_; }
  const Point& operator[](std::size_t i) const { return points_[i]; }
  auto begin() const noexcept { return points_.begin(); }
  auto end() const noexcept { return points_.end(); }

  /// Index of p in the canonical order, if present.
  std::optional<std::size_t> find(const Point& p) const;
  bool contains(const Point& p) const { return find(p).has_value(); }

  bool operator==(const FiniteSubset& other) const noexcept {
    return norm_ == other.norm_ && points_ == other.points_;
  }

 private:
  NormDescriptor norm_;
  std::vector<Point> points_;
};

void require_same_space(const FiniteSubset& x, const FiniteSubset& y);

FiniteSubset set_union(const FiniteSubset& x, const FiniteSubset& y);
/// x + v as a set.
FiniteSubset translate(const FiniteSubset& x, const Point& v);
/// (x - v) / t as a set; t > 0.
FiniteSubset normalize(const FiniteSubset& x, const Point& v, double t);

/// max( max_i min_j d(x_i,y_j), max_j min_i d(x_i,y_j) ).
double hausdorff(const FiniteSubset& x, const FiniteSubset& y);

/// The closed form of Hausdorff distance on X(2); singletons are padded by
/// repeating their point.
double hausdorff_pairs(const FiniteSubset& x, const FiniteSubset& y);

/// dist(x, y) = min over pairs.
double set_distance(const FiniteSubset& x, const FiniteSubset& y);

double diameter(const FiniteSubset& x);

/// delta_n: min pairwise distance when |x| = n, zero on lower strata.
double min_separation(const FiniteSubset& x, std::size_t n);
/// Min pairwise distance regardless of the ambient cardinality (0 for a
/// singleton).
double total_min_separation(const FiniteSubset& x);

/// Largest distance between two complementary nonempty parts, computed as the
/// longest edge of a minimum spanning tree of the complete distance graph.
double gap(const FiniteSubset& x);

struct Bipartition {
  FiniteSubset first;
  FiniteSubset second;
};

/// A split realizing gap(x) whose parts have gaps no larger than gap(x).
Bipartition gap_reducing_decomposition(const FiniteSubset& x);

/// For |x| = |y| with delta(x) > 2 d_H or delta(y) > 2 d_H: result[i] is the
/// index in y paired with x[i], each pair within d_H(x,y).
std::vector<std::size_t> match_points(const FiniteSubset& x, const FiniteSubset& y);

/// An (alpha,beta)-decomposition: two parts of diameter <= alpha separated by
/// >= beta. Unique up to order when alpha < beta.
std::optional<Bipartition> two_cluster_decomposition(const FiniteSubset& x, double alpha,
                                                     double beta);

struct StratumProjection {
  double value;
  FiniteSubset witness;
};

/// dist_H(x, X(|x|-1)) = delta(x)/2 with the midpoint-merge witness.
StratumProjection dist_to_lower_stratum(const FiniteSubset& x);

/// Largest |x| accepted by dist_to_X2.
inline constexpr std::size_t kDistToX2Limit = 12;

/// dist_H(x, X(2)) by enumerating bipartitions and taking Chebyshev radii.
StratumProjection dist_to_X2(const FiniteSubset& x);

struct Ball {
  Point center;
  double radius;
};

/// Smallest ball containing x in the ambient metric (Chebyshev center).
/// Exact for dim 1, p = 2 and p = inf; other norms use a convex solver with
/// absolute accuracy ~1e-8 relative to diam(x).
Ball chebyshev_ball(const FiniteSubset& x);

namespace detail {
/// Minimum enclosing Euclidean ball (Welzl).
Ball min_enclosing_ball_l2(const FiniteSubset& x);
/// Ellipsoid method on c -> max_i |c - x_i|_p; works for every p.
Ball min_enclosing_ball_convex(const FiniteSubset& x, double tol);
}  // namespace detail

}  // namespace subsetspace
