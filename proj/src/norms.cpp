#include "subsetspace/norms.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "subsetspace/error.hpp"

namespace subsetspace {

NormDescriptor NormDescriptor::make(double p, double epsilon, int dim) {
  if (!(p >= 1.0)) throw Error(ErrorCode::InvalidInput, "p-norm requires p >= 1");
  if (!(epsilon > 0.0 && epsilon <= 1.0))
    throw Error(ErrorCode::InvalidInput, "snowflake exponent must lie in (0,1]");
  if (dim < 1) throw Error(ErrorCode::InvalidInput, "dimension must be positive");
  return NormDescriptor{p, epsilon, dim};
}

double pnorm(double p, std::span<const double> v) {
  if (p == 2.0) {
    double s = 0.0;
    for (double c : v) s += c * c;
    // Falls through to the factored form on overflow or underflow.
    if (std::isfinite(s) && s > 1e-290) return std::sqrt(s);
  }
  if (p == 1.0) {
    double s = 0.0;
    for (double c : v) s += std::abs(c);
    return s;
  }
  double m = 0.0;
  for (double c : v) m = std::max(m, std::abs(c));
  if (std::isinf(p) || m == 0.0) return m;
  // Factor out the largest coordinate so the power sum cannot overflow.
  double s = 0.0;
  for (double c : v) s += std::pow(std::abs(c) / m, p);
  return m * std::pow(s, 1.0 / p);
}

Point::Point(NormDescriptor norm, std::vector<double> coords)
    : norm_(norm), coords_(std::move(coords)) {
  if (coords_.size() != static_cast<std::size_t>(norm_.dim))
    throw Error(ErrorCode::InvalidInput, "point has " + std::to_string(coords_.size()) +
                                             " coordinates, space has dimension " +
                                             std::to_string(norm_.dim));
  for (double c : coords_)
    if (!std::isfinite(c)) throw Error(ErrorCode::InvalidInput, "non-finite coordinate");
}

std::weak_ordering Point::operator<=>(const Point& other) const noexcept {
  const std::size_t n = std::min(coords_.size(), other.coords_.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (coords_[i] < other.coords_[i]) return std::weak_ordering::less;
    if (coords_[i] > other.coords_[i]) return std::weak_ordering::greater;
  }
  return coords_.size() <=> other.coords_.size();
}

void require_same_space(const Point& a, const Point& b) {
  if (a.dim() != b.dim() || !(a.norm() == b.norm()))
    throw Error(ErrorCode::InvalidInput, "points live in different normed spaces");
}

void require_plain_norm(const NormDescriptor& norm, const char* op) {
  if (norm.snowflaked())
    throw Error(ErrorCode::UnsupportedOperation,
                std::string(op) + " needs straight segments; snowflake metrics have none");
}

double distance(const Point& a, const Point& b) {
  require_same_space(a, b);
  const NormDescriptor& nd = a.norm();
  const std::size_t d = a.dim();
  double r;
  if (nd.p == 2.0) {
    double s = 0.0;
    for (std::size_t i = 0; i < d; ++i) {
      const double t = a[i] - b[i];
      s += t * t;
    }
    r = std::sqrt(s);
  } else if (nd.p == 1.0) {
    r = 0.0;
    for (std::size_t i = 0; i < d; ++i) r += std::abs(a[i] - b[i]);
  } else if (std::isinf(nd.p)) {
    r = 0.0;
    for (std::size_t i = 0; i < d; ++i) r = std::max(r, std::abs(a[i] - b[i]));
  } else {
    std::vector<double> diff(d);
    for (std::size_t i = 0; i < d; ++i) diff[i] = a[i] - b[i];
    r = pnorm(nd.p, diff);
  }
  return nd.epsilon == 1.0 ? r : std::pow(r, nd.epsilon);
}

Point lerp(const Point& a, const Point& b, double t) {
  require_same_space(a, b);
  require_plain_norm(a.norm(), "lerp");
  std::vector<double> c(a.dim());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = (1.0 - t) * a[i] + t * b[i];
  return Point(a.norm(), std::move(c));
}

Point unit_direction(const Point& a, const Point& b) {
  require_same_space(a, b);
  require_plain_norm(a.norm(), "unit_direction");
  if (a == b) throw Error(ErrorCode::SingularDirection, "direction between equal points");
  Point diff = subtract(a, b);
  return scale(diff, 1.0 / vector_norm(diff));
}

Point add(const Point& a, const Point& b) {
  require_same_space(a, b);
  std::vector<double> c(a.dim());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = a[i] + b[i];
  return Point(a.norm(), std::move(c));
}

Point subtract(const Point& a, const Point& b) {
  require_same_space(a, b);
  std::vector<double> c(a.dim());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = a[i] - b[i];
  return Point(a.norm(), std::move(c));
}

Point scale(const Point& a, double s) {
  std::vector<double> c(a.coords());
  for (double& v : c) v *= s;
  return Point(a.norm(), std::move(c));
}

Point average(std::span<const Point> points) {
  if (points.empty()) throw Error(ErrorCode::InvalidInput, "average of no points");
  std::vector<double> c(points.front().dim(), 0.0);
  for (const Point& q : points) {
    require_same_space(points.front(), q);
    for (std::size_t i = 0; i < c.size(); ++i) c[i] += q[i];
  }
  for (double& v : c) v /= static_cast<double>(points.size());
  return Point(points.front().norm(), std::move(c));
}

double vector_norm(const Point& v) { return pnorm(v.norm().p, v.coords()); }

}  // namespace subsetspace
