#include "subsetspace/selector.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <random>

#include "subsetspace/error.hpp"

namespace subsetspace {

namespace {

double cross(const Point& o, const Point& a, const Point& b) {
  return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
}

/// Unit directions on S^{d-1}, generated once per dimension.
const std::vector<double>& sphere_directions(int dim) {
  static std::mutex mu;
  static std::map<int, std::vector<double>> cache;
  std::lock_guard lock(mu);
  auto it = cache.find(dim);
  if (it != cache.end()) return it->second;
  std::mt19937_64 rng(0x5eed0000ULL + static_cast<unsigned>(dim));
  std::normal_distribution<double> normal;
  const auto d = static_cast<std::size_t>(dim);
  std::vector<double> dirs(kSteinerSamples * d);
  for (std::size_t s = 0; s < kSteinerSamples; ++s) {
    double nrm = 0.0;
    do {
      nrm = 0.0;
      for (std::size_t k = 0; k < d; ++k) {
        dirs[s * d + k] = normal(rng);
        nrm += dirs[s * d + k] * dirs[s * d + k];
      }
    } while (nrm == 0.0);
    nrm = std::sqrt(nrm);
    for (std::size_t k = 0; k < d; ++k) dirs[s * d + k] /= nrm;
  }
  return cache.emplace(dim, std::move(dirs)).first->second;
}

Point weighted_sum(const NormDescriptor& nd, const std::vector<Point>& pts,
                   const std::vector<double>& w) {
  std::vector<double> c(static_cast<std::size_t>(nd.dim), 0.0);
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t k = 0; k < c.size(); ++k) c[k] += w[i] * pts[i][k];
  return Point(nd, std::move(c));
}

}  // namespace

namespace detail {

std::vector<Point> planar_hull(const FiniteSubset& x) {
  if (x.norm().dim != 2) throw Error(ErrorCode::InvalidInput, "planar_hull needs dim 2");
  const auto& pts = x.points();  // already lexicographically sorted and distinct
  if (pts.size() < 3) return pts;
  std::vector<Point> hull(2 * pts.size());
  std::size_t k = 0;
  for (const Point& p : pts) {
    while (k >= 2 && cross(hull[k - 2], hull[k - 1], p) <= 0.0) --k;
    hull[k++] = p;
  }
  for (std::size_t i = pts.size() - 1, lower = k + 1; i-- > 0;) {
    while (k >= lower && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0.0) --k;
    hull[k++] = pts[i];
  }
  hull.resize(k - 1);
  return hull;
}

}  // namespace detail

Point steiner_point(const FiniteSubset& x) {
  const NormDescriptor& nd = x.norm();
  if (x.size() == 1) return x[0];
  if (nd.dim == 1) {
    const double lo = x[0][0], hi = x[x.size() - 1][0];
    return Point(nd, {0.5 * (lo + hi)});
  }
  if (nd.dim == 2) {
    const std::vector<Point> hull = detail::planar_hull(x);
    if (hull.size() == 2) return weighted_sum(nd, hull, {0.5, 0.5});
    // Weight of a vertex is its exterior angle over 2 pi.
    const std::size_t h = hull.size();
    std::vector<double> w(h);
    for (std::size_t i = 0; i < h; ++i) {
      const Point& prev = hull[(i + h - 1) % h];
      const Point& cur = hull[i];
      const Point& next = hull[(i + 1) % h];
      const double ax = cur[0] - prev[0], ay = cur[1] - prev[1];
      const double bx = next[0] - cur[0], by = next[1] - cur[1];
      w[i] = std::atan2(ax * by - ay * bx, ax * bx + ay * by) / (2.0 * std::numbers::pi);
    }
    return weighted_sum(nd, hull, w);
  }
  const auto d = static_cast<std::size_t>(nd.dim);
  const std::vector<double>& dirs = sphere_directions(nd.dim);
  std::vector<double> counts(x.size(), 0.0);
  for (std::size_t s = 0; s < kSteinerSamples; ++s) {
    const double* u = dirs.data() + s * d;
    std::size_t best = 0;
    double bv = -kInf;
    for (std::size_t i = 0; i < x.size(); ++i) {
      double v = 0.0;
      for (std::size_t k = 0; k < d; ++k) v += u[k] * x[i][k];
      if (v > bv) {
        bv = v;
        best = i;
      }
    }
    counts[best] += 1.0;
  }
  for (double& c : counts) c /= static_cast<double>(kSteinerSamples);
  return weighted_sum(nd, x.points(), counts);
}

}  // namespace subsetspace
