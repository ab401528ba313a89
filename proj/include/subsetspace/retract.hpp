#pragma once

#include "subsetspace/subsets.hpp"

namespace subsetspace {

/// Piecewise linear pair phi1 + phi2 = 1 with phi1 = 1 up to t_low and
/// phi1 = 0 from t_high on.
class PartitionOfUnity {
 public:
  /// Breakpoints 1/5 and 1/4, phi1(t) = -20t + 5 in between.
  static PartitionOfUnity three_point();
  /// Breakpoints 1/(3 tau) and 1/(2 tau), phi1(t) = -6 tau t + 3 in between.
  /// Requires tau > 6.
  static PartitionOfUnity skeleton(double tau);

  double t_low() const noexcept { return t_low_; }
  double t_high() const noexcept { return t_high_; }
  double phi1(double t) const noexcept;
  double phi2(double t) const noexcept { return 1.0 - phi1(t); }
  double lipschitz() const noexcept { return 1.0 / (t_high_ - t_low_); }

 private:
  PartitionOfUnity(double t_low, double t_high, double slope, double intercept)
      : t_low_(t_low), t_high_(t_high), slope_(slope), intercept_(intercept) {}
  double t_low_, t_high_, slope_, intercept_;
};

inline constexpr double kDefaultTau = 7.0;

/// a * A + b * B as a set (Minkowski combination).
FiniteSubset minkowski_combination(double a, const FiniteSubset& A, double b,
                                   const FiniteSubset& B);

/// X(2) -> X: the average of the (at most two) points.
FiniteSubset retract_pair_average(const FiniteSubset& x);

/// The interpolation map on normalized elements of X(3): 0 in x, diam 1.
FiniteSubset interpolation_map_3(const FiniteSubset& x);

/// X(3) -> X(2) by homogeneous extension of interpolation_map_3, normalizing
/// with v = lexicographically smallest point and t = diam(x).
FiniteSubset retract_3_to_2(const FiniteSubset& x);

/// X(n) -> X: {steiner_point(x)}.
FiniteSubset retract_n_to_1(const FiniteSubset& x);

/// X(n) -> X(2) (skeleton map), |x| <= kDistToX2Limit.
FiniteSubset retract_n_to_2(const FiniteSubset& x, double tau = kDefaultTau);

}  // namespace subsetspace
