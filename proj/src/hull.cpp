#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

#include "subsetspace/error.hpp"
#include "subsetspace/verify.hpp"

namespace subsetspace {

namespace {

/// min |V mu - q|^2 subject to sum(mu) = 1 over the columns in `active`,
/// solved as least squares on edge vectors from the first active vertex (no
/// normal equations, so thin simplices keep their accuracy).
Eigen::VectorXd solve_affine(const Eigen::MatrixXd& V, const Eigen::VectorXd& q,
                             const std::vector<Eigen::Index>& active) {
  const auto k = static_cast<Eigen::Index>(active.size());
  Eigen::VectorXd mu = Eigen::VectorXd::Zero(k);
  const Eigen::VectorXd base = V.col(active[0]);
  if (k == 1) {
    mu[0] = 1.0;
    return mu;
  }
  Eigen::MatrixXd E(V.rows(), k - 1);
  for (Eigen::Index a = 1; a < k; ++a) E.col(a - 1) = V.col(active[static_cast<std::size_t>(a)]) - base;
  const Eigen::VectorXd c = E.completeOrthogonalDecomposition().solve(q - base);
  mu.tail(k - 1) = c;
  mu[0] = 1.0 - c.sum();
  return mu;
}

}  // namespace

double distance_to_hull(const Point& q, const std::vector<Point>& vertices) {
  if (vertices.empty()) throw Error(ErrorCode::InvalidInput, "empty vertex list");
  const auto dim = static_cast<Eigen::Index>(q.dim());
  const auto n = static_cast<Eigen::Index>(vertices.size());
  Eigen::MatrixXd V(dim, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const Point& v = vertices[static_cast<std::size_t>(i)];
    if (v.dim() != q.dim()) throw Error(ErrorCode::InvalidInput, "dimension mismatch");
    V.col(i) = Eigen::Map<const Eigen::VectorXd>(v.coords().data(), dim);
  }
  const Eigen::VectorXd target = Eigen::Map<const Eigen::VectorXd>(q.coords().data(), dim);

  // Active-set method over the standard simplex, started at the nearest vertex.
  Eigen::Index start = 0;
  (V.colwise() - target).colwise().squaredNorm().minCoeff(&start);
  Eigen::VectorXd lambda = Eigen::VectorXd::Zero(n);
  lambda[start] = 1.0;
  std::vector<Eigen::Index> active{start};
  const double scale = 1.0 + V.cwiseAbs().maxCoeff() + target.cwiseAbs().maxCoeff();

  for (int iter = 0; iter < 100 * static_cast<int>(n) + 100; ++iter) {
    const Eigen::VectorXd mu = solve_affine(V, target, active);
    if (mu.minCoeff() >= 0.0) {
      for (std::size_t a = 0; a < active.size(); ++a) lambda[active[a]] = mu[static_cast<Eigen::Index>(a)];
      // Moving toward v_j helps iff (v_j - p).r < 0 at the current point p;
      // the test is on the cosine so it does not depend on the scale of x.
      const Eigen::VectorXd p = V * lambda;
      const Eigen::VectorXd r = p - target;
      const double rn = r.norm();
      // Inside up to rounding.
      if (rn <= 1e-15 * scale) break;
      Eigen::Index entering = -1;
      double most = -1e-10;
      for (Eigen::Index j = 0; j < n; ++j) {
        if (std::find(active.begin(), active.end(), j) != active.end()) continue;
        const Eigen::VectorXd step = V.col(j) - p;
        const double sn = step.norm();
        if (sn == 0.0) continue;
        const double cosine = step.dot(r) / (sn * rn);
        if (cosine < most) {
          most = cosine;
          entering = j;
        }
      }
      if (entering < 0) break;
      active.push_back(entering);
      continue;
    }
    // Move toward mu until a coordinate hits zero, then drop it.
    double alpha = 1.0;
    for (std::size_t a = 0; a < active.size(); ++a) {
      const double m = mu[static_cast<Eigen::Index>(a)], l = lambda[active[a]];
      if (m < 0.0) alpha = std::min(alpha, l / (l - m));
    }
    for (std::size_t a = 0; a < active.size(); ++a) {
      const Eigen::Index j = active[a];
      lambda[j] += alpha * (mu[static_cast<Eigen::Index>(a)] - lambda[j]);
    }
    std::vector<Eigen::Index> kept;
    for (Eigen::Index j : active)
      if (lambda[j] > 1e-15) kept.push_back(j);
      else lambda[j] = 0.0;
    if (kept.empty()) kept.push_back(start);
    active.swap(kept);
  }
  return (V * lambda - target).norm();
}

}  // namespace subsetspace
