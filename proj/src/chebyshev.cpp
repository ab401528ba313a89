#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

#include "subsetspace/error.hpp"
#include "subsetspace/subsets.hpp"

namespace subsetspace {

namespace {

using Vec = Eigen::VectorXd;

Vec to_vec(const Point& p) { return Eigen::Map<const Vec>(p.coords().data(), p.dim()); }

Point to_point(const NormDescriptor& nd, const Vec& v) {
  return Point(nd, std::vector<double>(v.data(), v.data() + v.size()));
}

struct EuclidBall {
  Vec center;
  double radius;
};

/// Smallest sphere through every point of `support` (circumsphere inside the
/// affine hull of the support).
EuclidBall circumball(const std::vector<Vec>& support, Eigen::Index dim) {
  if (support.empty()) return {Vec::Zero(dim), -1.0};
  const Vec& p0 = support.front();
  const Eigen::Index k = static_cast<Eigen::Index>(support.size()) - 1;
  if (k == 0) return {p0, 0.0};
  Eigen::MatrixXd edges(dim, k);
  for (Eigen::Index i = 0; i < k; ++i) edges.col(i) = support[static_cast<std::size_t>(i + 1)] - p0;
  const Eigen::MatrixXd gram = 2.0 * edges.transpose() * edges;
  const Vec rhs = edges.colwise().squaredNorm().transpose();
  const Vec lambda = gram.completeOrthogonalDecomposition().solve(rhs);
  Vec c = p0 + edges * lambda;
  double r = 0.0;
  for (const Vec& p : support) r = std::max(r, (p - c).norm());
  return {std::move(c), r};
}

bool inside(const EuclidBall& b, const Vec& p) {
  return b.radius >= 0.0 && (p - b.center).norm() <= b.radius * (1.0 + 1e-12) + 1e-300;
}

EuclidBall welzl(const std::vector<Vec>& pts, std::size_t n, std::vector<Vec>& support,
                 Eigen::Index dim) {
  if (n == 0 || support.size() == static_cast<std::size_t>(dim) + 1)
    return circumball(support, dim);
  const Vec& p = pts[n - 1];
  EuclidBall b = welzl(pts, n - 1, support, dim);
  if (inside(b, p)) return b;
  support.push_back(p);
  b = welzl(pts, n - 1, support, dim);
  support.pop_back();
  return b;
}

double snowflake(const NormDescriptor& nd, double r) {
  return nd.epsilon == 1.0 ? r : std::pow(r, nd.epsilon);
}

/// Subgradient of v -> |v|_p.
Vec pnorm_subgradient(double p, const Vec& v) {
  Vec g = Vec::Zero(v.size());
  if (std::isinf(p)) {
    Eigen::Index k;
    v.cwiseAbs().maxCoeff(&k);
    g[k] = v[k] >= 0.0 ? 1.0 : -1.0;
    return g;
  }
  if (p == 1.0) {
    for (Eigen::Index i = 0; i < v.size(); ++i) g[i] = v[i] > 0.0 ? 1.0 : (v[i] < 0.0 ? -1.0 : 0.0);
    return g;
  }
  const double nrm = pnorm(p, std::span<const double>(v.data(), static_cast<std::size_t>(v.size())));
  if (nrm == 0.0) return g;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    const double a = std::abs(v[i]) / nrm;
    g[i] = (v[i] >= 0.0 ? 1.0 : -1.0) * std::pow(a, p - 1.0);
  }
  return g;
}

}  // namespace

namespace detail {

Ball min_enclosing_ball_l2(const FiniteSubset& x) {
  const Eigen::Index dim = x.norm().dim;
  std::vector<Vec> pts;
  pts.reserve(x.size());
  for (const Point& p : x) pts.push_back(to_vec(p));
  std::vector<Vec> support;
  const EuclidBall b = welzl(pts, pts.size(), support, dim);
  double r = 0.0;
  const Point c = to_point(x.norm(), b.center);
  for (const Point& p : x) r = std::max(r, distance(c, p));
  return {c, r};
}

Ball min_enclosing_ball_convex(const FiniteSubset& x, double tol) {
  const NormDescriptor& nd = x.norm();
  const Eigen::Index dim = nd.dim;
  const double p = nd.p;
  std::vector<Vec> pts;
  for (const Point& q : x) pts.push_back(to_vec(q));

  Vec lo = pts.front(), hi = pts.front();
  for (const Vec& q : pts) {
    lo = lo.cwiseMin(q);
    hi = hi.cwiseMax(q);
  }
  Vec c = 0.5 * (lo + hi);
  const double half_diag = 0.5 * (hi - lo).norm();
  auto objective = [&](const Vec& at, std::size_t* arg) {
    double worst = -1.0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      const Vec w = at - pts[i];
      const double d = pnorm(p, std::span<const double>(w.data(), static_cast<std::size_t>(dim)));
      if (d > worst) {
        worst = d;
        if (arg) *arg = i;
      }
    }
    return worst;
  };
  if (half_diag == 0.0) return {to_point(nd, c), 0.0};

  // An optimal center lies in the bounding box (clamping never increases a
  // coordinate offset), so the box's circumscribed ball is a valid start.
  const double scale = 2.0 * half_diag;
  // Ellipsoid {c + L u : |u| <= 1}, kept in factored form so that it stays
  // positive definite over many thousands of cuts.
  Eigen::MatrixXd factor = Eigen::MatrixXd::Identity(dim, dim) * (half_diag * 1.00005);
  Vec best_c = c;
  std::size_t arg = 0;
  double best_f = objective(c, &arg);
  const double dd = static_cast<double>(dim);
  const double expand = dim == 1 ? 0.5 : dd / std::sqrt(dd * dd - 1.0);
  const double shrink = dim == 1 ? 0.0 : 1.0 - std::sqrt((dd - 1.0) / (dd + 1.0));
  for (int iter = 0; iter < 200000; ++iter) {
    const double f = objective(c, &arg);
    if (f < best_f) {
      best_f = f;
      best_c = c;
    }
    const Vec g = pnorm_subgradient(p, c - pts[arg]);
    const Vec a = factor.transpose() * g;
    const double width = a.norm();
    if (!(width > 0.0)) break;
    // f(c) - f* <= |L' g| for every center in the ellipsoid.
    if (width <= tol * scale) break;
    const Vec dir = a / width;
    if (dim == 1) {
      c -= 0.5 * factor * dir;
      factor *= expand;
      continue;
    }
    c -= (factor * dir) / (dd + 1.0);
    factor = expand * (factor - shrink * (factor * dir) * dir.transpose());
  }
  return {to_point(nd, best_c), best_f};
}

}  // namespace detail

Ball chebyshev_ball(const FiniteSubset& x) {
  const NormDescriptor& nd = x.norm();
  if (x.size() == 1) return {x[0], 0.0};
  Ball plain{x[0], 0.0};
  const NormDescriptor flat{nd.p, 1.0, nd.dim};
  std::vector<Point> pts;
  pts.reserve(x.size());
  for (const Point& p : x) pts.emplace_back(flat, p.coords());
  const FiniteSubset fx(flat, std::move(pts));

  if (nd.dim == 1 || std::isinf(nd.p)) {
    // Coordinatewise interval midpoints: exact for the max-norm and on R.
    std::vector<double> lo(fx[0].coords()), hi(fx[0].coords());
    for (const Point& p : fx)
      for (std::size_t i = 0; i < lo.size(); ++i) {
        lo[i] = std::min(lo[i], p[i]);
        hi[i] = std::max(hi[i], p[i]);
      }
    std::vector<double> mid(lo.size());
    double r = 0.0;
    for (std::size_t i = 0; i < lo.size(); ++i) {
      mid[i] = 0.5 * (lo[i] + hi[i]);
      r = std::max(r, 0.5 * (hi[i] - lo[i]));
    }
    plain = {Point(flat, std::move(mid)), r};
  } else if (nd.p == 2.0) {
    plain = detail::min_enclosing_ball_l2(fx);
  } else {
    plain = detail::min_enclosing_ball_convex(fx, 1e-9);
  }
  return {Point(nd, plain.center.coords()), snowflake(nd, plain.radius)};
}

}  // namespace subsetspace
