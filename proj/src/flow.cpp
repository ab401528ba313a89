#include "subsetspace/flow.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "subsetspace/error.hpp"

namespace subsetspace {

namespace {

/// Flat n x d state with p-norm pair geometry.
class System {
 public:
  System(std::size_t n, std::size_t d, double p) : n_(n), d_(d), p_(p), diff_(d) {}

  std::size_t size() const noexcept { return n_ * d_; }

  double norm(const double* v) const noexcept {
    if (p_ == 2.0) {
      double s = 0.0;
      for (std::size_t k = 0; k < d_; ++k) s += v[k] * v[k];
      return std::sqrt(s);
    }
    if (p_ == 1.0) {
      double s = 0.0;
      for (std::size_t k = 0; k < d_; ++k) s += std::abs(v[k]);
      return s;
    }
    if (std::isinf(p_)) {
      double s = 0.0;
      for (std::size_t k = 0; k < d_; ++k) s = std::max(s, std::abs(v[k]));
      return s;
    }
    return pnorm(p_, std::span<const double>(v, d_));
  }

  double pair_distance(const double* u, std::size_t i, std::size_t j) {
    for (std::size_t k = 0; k < d_; ++k) diff_[k] = u[i * d_ + k] - u[j * d_ + k];
    return norm(diff_.data());
  }

  /// out = -J(u); false if two points coincide.
  bool field(const double* u, double* out) {
    std::fill(out, out + size(), 0.0);
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = i + 1; j < n_; ++j) {
        const double r = pair_distance(u, i, j);
        if (!(r > 0.0)) return false;
        for (std::size_t k = 0; k < d_; ++k) {
          const double e = diff_[k] / r;
          out[i * d_ + k] -= e;
          out[j * d_ + k] += e;
        }
      }
    return true;
  }

  struct Closest {
    double sep;
    std::size_t i, j;
  };

  Closest closest(const double* u) {
    Closest c{kInf, 0, 1};
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = i + 1; j < n_; ++j) {
        const double r = pair_distance(u, i, j);
        if (r < c.sep) c = {r, i, j};
      }
    return c;
  }

  std::size_t n() const noexcept { return n_; }
  std::size_t d() const noexcept { return d_; }

 private:
  std::size_t n_, d_;
  double p_;
  std::vector<double> diff_;
};

// Dormand-Prince 5(4) tableau.
constexpr double kA21 = 1.0 / 5.0;
constexpr double kA31 = 3.0 / 40.0, kA32 = 9.0 / 40.0;
constexpr double kA41 = 44.0 / 45.0, kA42 = -56.0 / 15.0, kA43 = 32.0 / 9.0;
constexpr double kA51 = 19372.0 / 6561.0, kA52 = -25360.0 / 2187.0, kA53 = 64448.0 / 6561.0,
                 kA54 = -212.0 / 729.0;
constexpr double kA61 = 9017.0 / 3168.0, kA62 = -355.0 / 33.0, kA63 = 46732.0 / 5247.0,
                 kA64 = 49.0 / 176.0, kA65 = -5103.0 / 18656.0;
constexpr double kB1 = 35.0 / 384.0, kB3 = 500.0 / 1113.0, kB4 = 125.0 / 192.0,
                 kB5 = -2187.0 / 6784.0, kB6 = 11.0 / 84.0;
constexpr double kE1 = 71.0 / 57600.0, kE3 = -71.0 / 16695.0, kE4 = 71.0 / 1920.0,
                 kE5 = -17253.0 / 339200.0, kE6 = 22.0 / 525.0, kE7 = -1.0 / 40.0;

Configuration unflatten(const NormDescriptor& nd, const std::vector<double>& y, std::size_t n) {
  const auto d = static_cast<std::size_t>(nd.dim);
  Configuration c;
  c.reserve(n);
  for (std::size_t i = 0; i < n; ++i)
    c.emplace_back(nd, std::vector<double>(y.begin() + static_cast<std::ptrdiff_t>(i * d),
                                           y.begin() + static_cast<std::ptrdiff_t>((i + 1) * d)));
  return c;
}

/// Single-linkage clusters at threshold tol, replaced by their averages.
std::vector<Point> merge_clusters(const Configuration& u, double tol) {
  const std::size_t n = u.size();
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t a) {
    while (parent[a] != a) a = parent[a] = parent[parent[a]];
    return a;
  };
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (distance(u[i], u[j]) <= tol) parent[find(j)] = find(i);
  std::vector<std::vector<Point>> groups(n);
  for (std::size_t i = 0; i < n; ++i) groups[find(i)].push_back(u[i]);
  std::vector<Point> out;
  for (const auto& g : groups)
    if (!g.empty()) out.push_back(g.size() == 1 ? g.front() : average(g));
  return out;
}

}  // namespace

Configuration flow_field(std::span<const Point> u) {
  if (u.empty()) return {};
  const NormDescriptor& nd = u.front().norm();
  require_plain_norm(nd, "flow_field");
  const auto d = static_cast<std::size_t>(nd.dim);
  System sys(u.size(), d, nd.p);
  std::vector<double> y(sys.size()), f(sys.size());
  for (std::size_t i = 0; i < u.size(); ++i)
    std::copy(u[i].coords().begin(), u[i].coords().end(), y.begin() + static_cast<std::ptrdiff_t>(i * d));
  if (!sys.field(y.data(), f.data()))
    throw Error(ErrorCode::SingularField, "flow field undefined at coincident points");
  return unflatten(nd, f, u.size());
}

FlowResult flow_retract(const FiniteSubset& x, const FlowOptions& options) {
  const NormDescriptor& nd = x.norm();
  require_plain_norm(nd, "flow_retract");
  const std::size_t n = options.n == 0 ? x.size() : options.n;
  if (n < 2) throw Error(ErrorCode::InvalidInput, "flow needs n >= 2");
  if (x.size() > n) throw Error(ErrorCode::InvalidInput, "input has more than n points");
  if (!(options.rk_tol > 0.0)) throw Error(ErrorCode::InvalidInput, "rk_tol must be positive");

  FlowResult result{{}, 0.0, x, 0.0, 0};
  if (x.size() < n) {
    result.trajectory.push_back({0.0, x.points()});
    return result;
  }

  const double delta = total_min_separation(x);
  const double merge_tol = options.merge_tol > 0.0 ? options.merge_tol : 1e-6 * delta;
  result.merge_tolerance = merge_tol;
  const double max_time = 0.5 * delta + 1e-3 * delta;
  const double tol_abs = options.rk_tol * diameter(x);

  const auto d = static_cast<std::size_t>(nd.dim);
  System sys(n, d, nd.p);
  const std::size_t m = sys.size();
  std::vector<double> y(m), k1(m), k2(m), k3(m), k4(m), k5(m), k6(m), k7(m), tmp(m), y5(m);
  for (std::size_t i = 0; i < n; ++i)
    std::copy(x[i].coords().begin(), x[i].coords().end(), y.begin() + static_cast<std::ptrdiff_t>(i * d));
  sys.field(y.data(), k1.data());
  result.trajectory.push_back({0.0, x.points()});

  double t = 0.0;
  System::Closest near = sys.closest(y.data());
  const double speed_cap = 4.0 * static_cast<double>(n - 1);
  double h = near.sep / speed_cap;

  auto stage = [&](std::initializer_list<std::pair<const std::vector<double>*, double>> terms,
                   std::vector<double>& out) {
    for (std::size_t q = 0; q < m; ++q) {
      double acc = y[q];
      for (const auto& [k, a] : terms) acc += h * a * (*k)[q];
      tmp[q] = acc;
    }
    return sys.field(tmp.data(), out.data());
  };

  while (near.sep > merge_tol) {
    if (++result.steps > options.max_steps)
      throw Error(ErrorCode::IntegrationFailure, "flow exceeded max_steps");
    if (t > max_time)
      throw Error(ErrorCode::IntegrationFailure, "no collision before delta/2");
    // Each point moves at speed <= n-1, so this cap keeps the closest pair
    // apart over the step.
    h = std::min(h, near.sep / speed_cap);
    if (!(h > 0.0) || t + h == t)
      throw Error(ErrorCode::IntegrationFailure, "step size underflow");

    const bool ok = stage({{&k1, kA21}}, k2) && stage({{&k1, kA31}, {&k2, kA32}}, k3) &&
                    stage({{&k1, kA41}, {&k2, kA42}, {&k3, kA43}}, k4) &&
                    stage({{&k1, kA51}, {&k2, kA52}, {&k3, kA53}, {&k4, kA54}}, k5) &&
                    stage({{&k1, kA61}, {&k2, kA62}, {&k3, kA63}, {&k4, kA64}, {&k5, kA65}}, k6);
    if (!ok) {
      h *= 0.5;
      continue;
    }
    for (std::size_t q = 0; q < m; ++q)
      y5[q] = y[q] + h * (kB1 * k1[q] + kB3 * k3[q] + kB4 * k4[q] + kB5 * k5[q] + kB6 * k6[q]);
    if (!sys.field(y5.data(), k7.data())) {
      h *= 0.5;
      continue;
    }
    double err = 0.0;
    for (std::size_t q = 0; q < m; ++q) {
      const double e = h * (kE1 * k1[q] + kE3 * k3[q] + kE4 * k4[q] + kE5 * k5[q] + kE6 * k6[q] +
                            kE7 * k7[q]);
      err = std::max(err, std::abs(e));
    }
    err /= tol_abs;
    const double factor = err == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(err, -0.2), 0.2, 5.0);
    if (err > 1.0) {
      h *= factor;
      continue;
    }
    t += h;
    y.swap(y5);
    k1.swap(k7);
    near = sys.closest(y.data());
    if (options.record_trajectory) result.trajectory.push_back({t, unflatten(nd, y, n)});
    h *= factor;
  }

  // Linear extrapolation of the closest pair to contact, then one Euler step
  // of the whole configuration to that time.
  double collision = t;
  Configuration final_config = unflatten(nd, y, n);
  std::vector<Point> merged = merge_clusters(final_config, merge_tol);
  {
    std::vector<double> w(d), dw(d), probe(d);
    for (std::size_t k = 0; k < d; ++k) {
      w[k] = y[near.i * d + k] - y[near.j * d + k];
      dw[k] = k1[near.i * d + k] - k1[near.j * d + k];
    }
    const double wn = sys.norm(w.data()), dwn = sys.norm(dw.data());
    if (wn > 0.0 && dwn > 0.0) {
      const double probe_h = 0.5 * wn / dwn;
      for (std::size_t k = 0; k < d; ++k) probe[k] = w[k] + probe_h * dw[k];
      const double rate = (wn - sys.norm(probe.data())) / probe_h;
      if (rate > 0.0) {
        const double dt = wn / rate;
        std::vector<double> snapped(m);
        for (std::size_t q = 0; q < m; ++q) snapped[q] = y[q] + dt * k1[q];
        Configuration snapped_config = unflatten(nd, snapped, n);
        std::vector<Point> snapped_merge = merge_clusters(snapped_config, merge_tol);
        if (snapped_merge.size() < n && t + dt > t) {
          collision = t + dt;
          final_config = std::move(snapped_config);
          merged = std::move(snapped_merge);
        }
      }
    }
  }
  // The center of mass is conserved exactly by the flow, so a full collapse
  // lands on the input centroid.
  if (merged.size() == 1) {
    std::vector<double> c(d, 0.0);
    for (const Point& p : x)
      for (std::size_t k = 0; k < d; ++k) c[k] += p[k];
    for (double& v : c) v /= static_cast<double>(n);
    merged = {Point(nd, std::move(c))};
  }
  if (collision > t || !options.record_trajectory)
    result.trajectory.push_back({collision, final_config});
  result.collision_time = collision;
  result.output = FiniteSubset(nd, std::move(merged));
  return result;
}

Configuration flow_closed_form_n2(const FiniteSubset& x, double t) {
  require_plain_norm(x.norm(), "flow_closed_form_n2");
  if (x.size() != 2) throw Error(ErrorCode::InvalidInput, "closed form needs |x| = 2");
  const double r = distance(x[0], x[1]);
  if (t < 0.0 || t > 0.5 * r * (1.0 + 1e-15))
    throw Error(ErrorCode::Domain, "t outside [0, |x1 - x2| / 2]");
  const Point j = scale(subtract(x[0], x[1]), 1.0 / r);
  return {subtract(x[0], scale(j, t)), add(x[1], scale(j, t))};
}

}  // namespace subsetspace
