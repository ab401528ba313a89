#pragma once

#include <compare>
#include <cstddef>
#include <limits>
#include <span>
#include <vector>

namespace subsetspace {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Absolute slack used by every degeneracy predicate unless a caller passes
/// its own value.
inline constexpr double kDefaultTolerance = 1e-9;

/// The ambient space: R^dim with the p-norm, optionally snowflaked as
/// d(a,b) = |a-b|_p^epsilon.
struct NormDescriptor {
  double p = 2.0;
  double epsilon = 1.0;
  int dim = 1;

  /// Validating constructor; throws invalid-input on p < 1, epsilon outside
  /// (0,1] or dim < 1.
  static NormDescriptor make(double p, double epsilon, int dim);

  bool snowflaked() const noexcept { return epsilon != 1.0; }
  bool operator==(const NormDescriptor&) const = default;
};

/// Plain p-norm of a coordinate vector (no snowflake exponent).
double pnorm(double p, std::span<const double> v);

class Point {
 public:
  Point() = default;
  Point(NormDescriptor norm, std::vector<double> coords);

  const NormDescriptor& norm() const noexcept { return norm_; }
  const std::vector<double>& coords() const noexcept { return coords_; }
  std::size_t dim() const noexcept { return coords_.size(); }
  double operator[](std::size_t i) const { return coords_[i]; }

  bool operator==(const Point& other) const noexcept { return coords_ == other.coords_; }
  /// Lexicographic order on coordinates; this is the canonical order of
  /// FiniteSubset.
  std::weak_ordering operator<=>(const Point& other) const noexcept;

 private:
  NormDescriptor norm_;
  std::vector<double> coords_;
};

double distance(const Point& a, const Point& b);

/// (1-t) a + t b. Exact at both endpoints.
Point lerp(const Point& a, const Point& b, double t);

/// (a-b)/|a-b|.
Point unit_direction(const Point& a, const Point& b);

// Vector-space helpers. These ignore the snowflake exponent.
Point add(const Point& a, const Point& b);
Point subtract(const Point& a, const Point& b);
Point scale(const Point& a, double s);
Point average(std::span<const Point> points);
/// |v|_p of a point viewed as a vector.
double vector_norm(const Point& v);

void require_same_space(const Point& a, const Point& b);
void require_plain_norm(const NormDescriptor& norm, const char* op);

}  // namespace subsetspace
