#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <set>

#include "subsetspace/error.hpp"
#include "subsetspace/verify.hpp"

namespace subsetspace {

SubsetPair spaced_pair(std::size_t n, double m) {
  if (n < 3) throw Error(ErrorCode::InvalidInput, "spaced pairs need n >= 3");
  if (!(m > 3.0)) throw Error(ErrorCode::InvalidInput, "spaced pairs need m > 3");
  std::vector<double> x{0.0, m - 1.0, m + 1.0};
  std::vector<double> y{-1.0, 1.0, m};
  for (std::size_t i = 4; i <= n; ++i) {
    const double step = static_cast<double>(i - 2) * m;
    x.push_back(step + 1.0);
    y.push_back(step + 2.0);
  }
  const NormDescriptor line{};
  std::vector<std::vector<double>> cx, cy;
  for (double v : x) cx.push_back({v});
  for (double v : y) cy.push_back({v});
  return {FiniteSubset::from_coords(line, cx), FiniteSubset::from_coords(line, cy)};
}

double spaced_pair_obstruction(const FiniteSubset& x, const FiniteSubset& y, std::size_t n,
                               std::size_t samples, std::uint64_t seed) {
  require_same_space(x, y);
  const NormDescriptor& nd = x.norm();
  std::vector<double> lo(static_cast<std::size_t>(nd.dim), kInf), hi(lo.size(), -kInf);
  for (const FiniteSubset* s : {&x, &y})
    for (const Point& p : *s)
      for (std::size_t k = 0; k < lo.size(); ++k) {
        lo[k] = std::min(lo[k], p[k]);
        hi[k] = std::max(hi[k], p[k]);
      }
  const double dh = hausdorff(x, y);
  std::vector<Point> pool(x.begin(), x.end());
  pool.insert(pool.end(), y.begin(), y.end());

  double worst = kInf;
  for (std::size_t s = 0; s < samples; ++s) {
    std::mt19937_64 rng(trial_seed(seed, s));
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::normal_distribution<double> normal;
    const std::size_t k = std::uniform_int_distribution<std::size_t>(1, n)(rng);
    std::vector<Point> z;
    const int mode = static_cast<int>(s % 3);
    for (std::size_t i = 0; i < k; ++i) {
      std::vector<double> c(lo.size());
      if (mode == 0) {
        // Random point of the bounding box (slightly enlarged).
        for (std::size_t q = 0; q < c.size(); ++q)
          c[q] = lo[q] - dh + unit(rng) * (hi[q] - lo[q] + 2.0 * dh);
      } else {
        // Convex combination of a point of x and a point of y, or a jittered
        // input point.
        const Point& a = x[std::uniform_int_distribution<std::size_t>(0, x.size() - 1)(rng)];
        const Point& b = y[std::uniform_int_distribution<std::size_t>(0, y.size() - 1)(rng)];
        const double t = mode == 1 ? unit(rng) : 0.5;
        const double jitter = dh * 0.5 * unit(rng);
        for (std::size_t q = 0; q < c.size(); ++q)
          c[q] = (1.0 - t) * a[q] + t * b[q] + jitter * normal(rng);
      }
      z.emplace_back(nd, std::move(c));
    }
    const FiniteSubset zs(nd, std::move(z));
    worst = std::min(worst, std::max(hausdorff(x, zs), hausdorff(zs, y)));
  }
  return worst;
}

BipHexagon bip_hexagon(double rotation) {
  const NormDescriptor plane{2.0, 1.0, 2};
  std::array<Point, 6> v;
  for (int k = 0; k < 6; ++k) {
    const double a = rotation + k * std::numbers::pi / 3.0;
    v[static_cast<std::size_t>(k)] = Point(plane, {std::cos(a), std::sin(a)});
  }
  // Vertices in cyclic order x1, y1, z1, x2, y2, z2.
  return {FiniteSubset(plane, {v[0], v[3]}), FiniteSubset(plane, {v[1], v[4]}),
          FiniteSubset(plane, {v[2], v[5]}), 0.5};
}

BipCheck verify_bip_hexagon(const BipHexagon& h, std::size_t grid, double tol) {
  if (grid < 2) throw Error(ErrorCode::InvalidInput, "grid must have at least 2 points");
  BipCheck out;
  out.grid = grid;
  out.max_pairwise = std::max({hausdorff(h.x, h.y), hausdorff(h.y, h.z), hausdorff(h.x, h.z)});
  out.pairwise_intersect = out.max_pairwise <= 2.0 * h.radius + 1e-12;

  // Label the six centre points; a candidate w = {a, b} is within r of a
  // centre set c iff a and b each see some point of c and every point of c
  // is seen by a or b. Only the visibility mask of a grid point matters.
  std::vector<Point> verts;
  std::vector<unsigned> set_masks;
  for (const FiniteSubset* c : {&h.x, &h.y, &h.z}) {
    unsigned m = 0;
    for (const Point& p : *c) {
      m |= 1u << verts.size();
      verts.push_back(p);
    }
    set_masks.push_back(m);
  }
  const double r = h.radius + tol;
  const NormDescriptor& nd = h.x.norm();
  std::set<unsigned> masks;
  for (std::size_t i = 0; i < grid; ++i)
    for (std::size_t j = 0; j < grid; ++j) {
      const double gx = -1.5 + 3.0 * static_cast<double>(i) / static_cast<double>(grid - 1);
      const double gy = -1.5 + 3.0 * static_cast<double>(j) / static_cast<double>(grid - 1);
      const Point g(nd, {gx, gy});
      unsigned m = 0;
      for (std::size_t k = 0; k < verts.size(); ++k)
        if (distance(g, verts[k]) <= r) m |= 1u << k;
      masks.insert(m);
    }
  for (unsigned a : masks)
    for (unsigned b : masks) {
      bool all = true;
      for (unsigned c : set_masks)
        all = all && (a & c) && (b & c) && ((a | b) & c) == c;
      if (all) out.common_point_found = true;
    }
  return out;
}

}  // namespace subsetspace
