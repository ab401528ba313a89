#include "subsetspace/retract.hpp"

#include <algorithm>
#include <cmath>

#include "subsetspace/error.hpp"
#include "subsetspace/selector.hpp"

namespace subsetspace {

namespace {

constexpr double kNormalizedSlack = 1e-9;

void require_normalized(const FiniteSubset& x) {
  const Point origin(x.norm(), std::vector<double>(static_cast<std::size_t>(x.norm().dim), 0.0));
  if (!x.contains(origin))
    throw Error(ErrorCode::InvalidInput, "interpolation map needs 0 in x");
  if (x.size() > 1 && std::abs(diameter(x) - 1.0) > kNormalizedSlack)
    throw Error(ErrorCode::InvalidInput, "interpolation map needs diam(x) = 1");
}

/// Applies t * R(x0) + v with x0 = (x - v) / t.
template <class Map>
FiniteSubset homogeneous_extension(const FiniteSubset& x, Map&& map) {
  const Point& v = x[0];
  const double t = diameter(x);
  const FiniteSubset image = map(normalize(x, v, t));
  std::vector<Point> out;
  out.reserve(image.size());
  for (const Point& p : image) out.push_back(add(scale(p, t), v));
  return FiniteSubset(x.norm(), std::move(out));
}

}  // namespace

PartitionOfUnity PartitionOfUnity::three_point() {
  return PartitionOfUnity(0.2, 0.25, -20.0, 5.0);
}

PartitionOfUnity PartitionOfUnity::skeleton(double tau) {
  if (!(tau > 6.0) || !std::isfinite(tau))
    throw Error(ErrorCode::InvalidInput, "tau must be a finite number > 6");
  return PartitionOfUnity(1.0 / (3.0 * tau), 1.0 / (2.0 * tau), -6.0 * tau, 3.0);
}

double PartitionOfUnity::phi1(double t) const noexcept {
  if (t <= t_low_) return 1.0;
  if (t >= t_high_) return 0.0;
  return std::clamp(slope_ * t + intercept_, 0.0, 1.0);
}

FiniteSubset minkowski_combination(double a, const FiniteSubset& A, double b,
                                   const FiniteSubset& B) {
  require_same_space(A, B);
  std::vector<Point> out;
  out.reserve(A.size() * B.size());
  for (const Point& p : A)
    for (const Point& q : B) out.push_back(add(scale(p, a), scale(q, b)));
  return FiniteSubset(A.norm(), std::move(out));
}

FiniteSubset retract_pair_average(const FiniteSubset& x) {
  require_plain_norm(x.norm(), "retract_pair_average");
  if (x.size() > 2) throw Error(ErrorCode::InvalidInput, "retract_pair_average needs |x| <= 2");
  if (x.size() == 1) return x;
  return FiniteSubset(x.norm(), {average(x.points())});
}

FiniteSubset interpolation_map_3(const FiniteSubset& x) {
  require_plain_norm(x.norm(), "interpolation_map_3");
  if (x.size() > 3) throw Error(ErrorCode::InvalidInput, "interpolation map needs |x| <= 3");
  require_normalized(x);
  if (x.size() <= 2) return x;

  // Closest pair (x1, x2); ties resolved by the first pair in canonical order.
  static constexpr std::size_t kPairs[3][3] = {{0, 1, 2}, {0, 2, 1}, {1, 2, 0}};
  std::size_t best = 0;
  double delta = kInf;
  for (std::size_t k = 0; k < 3; ++k) {
    const double d = distance(x[kPairs[k][0]], x[kPairs[k][1]]);
    if (d < delta) {
      delta = d;
      best = k;
    }
  }
  const Point& x1 = x[kPairs[best][0]];
  const Point& x2 = x[kPairs[best][1]];
  const Point& x3 = x[kPairs[best][2]];

  const PartitionOfUnity pou = PartitionOfUnity::three_point();
  const double phi1 = pou.phi1(delta);
  const FiniteSubset r1(x.norm(), {scale(add(x1, x2), 0.5), x3});
  if (phi1 == 1.0) return r1;
  const FiniteSubset r2(x.norm(), {average(x.points())});
  if (phi1 == 0.0) return r2;
  return minkowski_combination(phi1, r1, 1.0 - phi1, r2);
}

FiniteSubset retract_3_to_2(const FiniteSubset& x) {
  require_plain_norm(x.norm(), "retract_3_to_2");
  if (x.size() > 3) throw Error(ErrorCode::InvalidInput, "retract_3_to_2 needs |x| <= 3");
  if (x.size() <= 2) return x;
  return homogeneous_extension(x, [](const FiniteSubset& x0) { return interpolation_map_3(x0); });
}

FiniteSubset retract_n_to_1(const FiniteSubset& x) {
  require_plain_norm(x.norm(), "retract_n_to_1");
  if (x.size() == 1) return x;
  return FiniteSubset(x.norm(), {steiner_point(x)});
}

FiniteSubset retract_n_to_2(const FiniteSubset& x, double tau) {
  require_plain_norm(x.norm(), "retract_n_to_2");
  const PartitionOfUnity pou = PartitionOfUnity::skeleton(tau);
  if (x.size() > kDistToX2Limit)
    throw Error(ErrorCode::SizeLimit, "retract_n_to_2 supports at most 12 points");
  if (x.size() <= 2) return x;
  return homogeneous_extension(x, [&](const FiniteSubset& x0) {
    const double delta = dist_to_X2(x0).value;
    const double phi1 = pou.phi1(delta);
    auto skeleton = [&] {
      const auto parts = two_cluster_decomposition(x0, 2.0 / tau, 1.0 - 4.0 / tau);
      if (!parts)
        throw Error(ErrorCode::NoMatchingGuarantee, "thin input without a two-cluster split");
      return FiniteSubset(x0.norm(), {steiner_point(parts->first), steiner_point(parts->second)});
    };
    if (phi1 == 1.0) return skeleton();
    const FiniteSubset r2(x0.norm(), {steiner_point(x0)});
    if (phi1 == 0.0) return r2;
    return minkowski_combination(phi1, skeleton(), 1.0 - phi1, r2);
  });
}

}  // namespace subsetspace
