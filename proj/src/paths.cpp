#include "subsetspace/paths.hpp"

#include <algorithm>
#include <cmath>

#include "subsetspace/error.hpp"

namespace subsetspace {

SubsetPath::SubsetPath(NormDescriptor norm, std::vector<std::vector<Segment>> legs,
                       std::size_t cardinality_bound)
    : norm_(norm), legs_(std::move(legs)), bound_(cardinality_bound) {
  require_plain_norm(norm_, "subset path");
  if (legs_.empty() || std::any_of(legs_.begin(), legs_.end(),
                                   [](const auto& leg) { return leg.empty(); }))
    throw Error(ErrorCode::InvalidInput, "path needs at least one nonempty leg");
}

SubsetPath SubsetPath::constant(const FiniteSubset& x) {
  std::vector<Segment> leg;
  for (const Point& p : x) leg.push_back({p, p});
  return SubsetPath(x.norm(), {std::move(leg)}, x.size());
}

FiniteSubset SubsetPath::sample(double t) const {
  const std::size_t n_legs = legs_.size();
  t = std::clamp(t, 0.0, 1.0);
  const double scaled = t * static_cast<double>(n_legs);
  const std::size_t k = std::min(static_cast<std::size_t>(scaled), n_legs - 1);
  const double local = scaled - static_cast<double>(k);
  std::vector<Point> pts;
  pts.reserve(legs_[k].size());
  for (const Segment& s : legs_[k]) pts.push_back(lerp(s.from, s.to, local));
  return FiniteSubset(norm_, std::move(pts));
}

std::vector<Segment> segments_of(const CompleteRelation& r) {
  std::vector<Segment> segs;
  segs.reserve(r.size());
  for (const auto& [a, b] : r.pairs()) segs.push_back({r.left()[a], r.right()[b]});
  return segs;
}

SubsetPath quasigeodesic_from_relation(const CompleteRelation& r, double lambda, double tol) {
  if (!(lambda >= 1.0)) throw Error(ErrorCode::InvalidInput, "lambda must be >= 1");
  const double dh = hausdorff(r.left(), r.right());
  for (const auto& [a, b] : r.pairs())
    if (distance(r.left()[a], r.right()[b]) > lambda * dh + tol)
      throw Error(ErrorCode::NotALambdaRelation, "pair distance exceeds lambda * d_H");
  return SubsetPath(r.left().norm(), {segments_of(r)}, r.size());
}

SubsetPath two_quasiconvex_path(const FiniteSubset& x, const FiniteSubset& y) {
  require_same_space(x, y);
  require_plain_norm(x.norm(), "two_quasiconvex_path");
  if (x == y) return SubsetPath::constant(x);
  const ProximalSplit s = proximal_split(x, y);
  const std::size_t bound = std::max(x.size(), y.size());
  if (s.x_dprime.empty() || s.y_prime.empty())
    return SubsetPath(x.norm(), {segments_of(reduce(proximal_complete_relation(x, y)))}, bound);

  std::vector<Segment> first, second;
  for (const auto& [a, b] : s.f) first.push_back({x[a], y[b]});
  for (std::size_t c : s.x_dprime) first.push_back({x[c], x[c]});
  for (std::size_t c : s.y_prime) second.push_back({y[c], y[c]});
  for (const auto& [a, b] : s.g) second.push_back({x[a], y[b]});
  return SubsetPath(x.norm(), {std::move(first), std::move(second)}, bound);
}

SubsetPath geodesic_in_larger_stratum(const FiniteSubset& x, const FiniteSubset& y) {
  require_same_space(x, y);
  require_plain_norm(x.norm(), "geodesic_in_larger_stratum");
  if (x == y) return SubsetPath::constant(x);
  const std::size_t nx = x.size(), ny = y.size();
  const std::size_t bound = std::max({nx, ny, nx + ny >= 2 ? nx + ny - 2 : 0});
  return SubsetPath(x.norm(), {segments_of(reduce(proximal_complete_relation(x, y)))}, bound);
}

double path_speed_profile(const SubsetPath& path, std::size_t grid) {
  if (grid < 2) throw Error(ErrorCode::InvalidInput, "grid must have at least 2 points");
  const double ends = hausdorff(path.sample(0.0), path.sample(1.0));
  if (ends == 0.0) throw Error(ErrorCode::UndefinedRatio, "path endpoints coincide");
  // d_H(G(s),G(t)) is bounded by the sum over the consecutive grid steps in
  // between, so the maximum over all grid pairs is attained by a neighbour pair.
  const double h = 1.0 / static_cast<double>(grid - 1);
  double worst = 0.0;
  FiniteSubset prev = path.sample(0.0);
  for (std::size_t i = 1; i < grid; ++i) {
    const double t = i + 1 == grid ? 1.0 : static_cast<double>(i) * h;
    FiniteSubset cur = path.sample(t);
    worst = std::max(worst, hausdorff(prev, cur) / (h * ends));
    prev = std::move(cur);
  }
  return worst;
}

double path_length(const SubsetPath& path, std::size_t grid) {
  if (grid < 2) throw Error(ErrorCode::InvalidInput, "grid must have at least 2 points");
  double total = 0.0;
  FiniteSubset prev = path.sample(0.0);
  for (std::size_t i = 1; i < grid; ++i) {
    const double t = i + 1 == grid ? 1.0 : static_cast<double>(i) / static_cast<double>(grid - 1);
    FiniteSubset cur = path.sample(t);
    total += hausdorff(prev, cur);
    prev = std::move(cur);
  }
  return total;
}

}  // namespace subsetspace
