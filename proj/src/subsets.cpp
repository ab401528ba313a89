#include "subsetspace/subsets.hpp"

#include <algorithm>
#include <cstdint>
#include <cmath>
#include <numeric>
#include <string>

#include "subsetspace/error.hpp"

namespace subsetspace {

namespace {

struct DisjointSets {
  std::vector<std::size_t> parent;
  explicit DisjointSets(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  }
  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (b < a) std::swap(a, b);
    parent[b] = a;
    return true;
  }
};

FiniteSubset pick(const FiniteSubset& x, const std::vector<std::size_t>& idx) {
  std::vector<Point> pts;
  pts.reserve(idx.size());
  for (std::size_t i : idx) pts.push_back(x[i]);
  return FiniteSubset(x.norm(), std::move(pts));
}

Bipartition split_by_mask(const FiniteSubset& x, const std::vector<bool>& in_first) {
  std::vector<std::size_t> a, b;
  for (std::size_t i = 0; i < x.size(); ++i) (in_first[i] ? a : b).push_back(i);
  return {pick(x, a), pick(x, b)};
}

/// Calls visit(mask) for every bipartition with x[0] in the first part; bit i
/// of mask set means x[i+1] joins the second part.
template <class Visit>
void for_each_bipartition(std::size_t n, Visit&& visit) {
  const std::uint64_t count = std::uint64_t{1} << (n - 1);
  for (std::uint64_t mask = 1; mask < count; ++mask) visit(mask);
}

std::vector<bool> mask_to_flags(std::size_t n, std::uint64_t mask) {
  std::vector<bool> first(n, true);
  for (std::size_t i = 1; i < n; ++i)
    if (mask >> (i - 1) & 1U) first[i] = false;
  return first;
}

}  // namespace

FiniteSubset::FiniteSubset(NormDescriptor norm, std::vector<Point> points)
    : norm_(norm), points_(std::move(points)) {
  if (points_.empty()) throw Error(ErrorCode::InvalidInput, "a finite subset must be nonempty");
  for (const Point& p : points_)
    if (!(p.norm() == norm_) || p.dim() != static_cast<std::size_t>(norm_.dim))
      throw Error(ErrorCode::InvalidInput, "subset points must share one norm descriptor");
  std::sort(points_.begin(), points_.end());
  points_.erase(std::unique(points_.begin(), points_.end()), points_.end());
}

FiniteSubset FiniteSubset::from_coords(NormDescriptor norm,
                                       const std::vector<std::vector<double>>& coords) {
  std::vector<Point> pts;
  pts.reserve(coords.size());
  for (const auto& c : coords) pts.emplace_back(norm, c);
  return FiniteSubset(norm, std::move(pts));
}

FiniteSubset FiniteSubset::on_line(std::initializer_list<double> values, double p,
                                   double epsilon) {
  const NormDescriptor nd = NormDescriptor::make(p, epsilon, 1);
  std::vector<Point> pts;
  for (double v : values) pts.emplace_back(nd, std::vector<double>{v});
  return FiniteSubset(nd, std::move(pts));
}

std::optional<std::size_t> FiniteSubset::find(const Point& p) const {
  auto it = std::lower_bound(points_.begin(), points_.end(), p);
  if (it != points_.end() && *it == p) return static_cast<std::size_t>(it - points_.begin());
  return std::nullopt;
}

void require_same_space(const FiniteSubset& x, const FiniteSubset& y) {
  if (!(x.norm() == y.norm()))
    throw Error(ErrorCode::InvalidInput, "subsets live in different normed spaces");
}

FiniteSubset set_union(const FiniteSubset& x, const FiniteSubset& y) {
  require_same_space(x, y);
  std::vector<Point> pts(x.points());
  pts.insert(pts.end(), y.begin(), y.end());
  return FiniteSubset(x.norm(), std::move(pts));
}

FiniteSubset translate(const FiniteSubset& x, const Point& v) {
  std::vector<Point> pts;
  pts.reserve(x.size());
  for (const Point& p : x) pts.push_back(add(p, v));
  return FiniteSubset(x.norm(), std::move(pts));
}

FiniteSubset normalize(const FiniteSubset& x, const Point& v, double t) {
  if (!(t > 0.0)) throw Error(ErrorCode::InvalidInput, "normalization scale must be positive");
  std::vector<Point> pts;
  pts.reserve(x.size());
  for (const Point& p : x) pts.push_back(scale(subtract(p, v), 1.0 / t));
  return FiniteSubset(x.norm(), std::move(pts));
}

double hausdorff(const FiniteSubset& x, const FiniteSubset& y) {
  require_same_space(x, y);
  const std::size_t m = x.size(), n = y.size();
  std::vector<double> col_min(n, kInf);
  double h = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    double row_min = kInf;
    for (std::size_t j = 0; j < n; ++j) {
      const double d = distance(x[i], y[j]);
      row_min = std::min(row_min, d);
      col_min[j] = std::min(col_min[j], d);
    }
    h = std::max(h, row_min);
  }
  for (double c : col_min) h = std::max(h, c);
  return h;
}

double hausdorff_pairs(const FiniteSubset& x, const FiniteSubset& y) {
  require_same_space(x, y);
  if (x.size() > 2 || y.size() > 2)
    throw Error(ErrorCode::InvalidInput, "closed form applies to X(2) only");
  const Point& x1 = x[0];
  const Point& x2 = x[x.size() - 1];
  const Point& y1 = y[0];
  const Point& y2 = y[y.size() - 1];
  return std::min(std::max(distance(x1, y1), distance(x2, y2)),
                  std::max(distance(x1, y2), distance(x2, y1)));
}

double set_distance(const FiniteSubset& x, const FiniteSubset& y) {
  require_same_space(x, y);
  double best = kInf;
  for (const Point& a : x)
    for (const Point& b : y) best = std::min(best, distance(a, b));
  return best;
}

double diameter(const FiniteSubset& x) {
  double d = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = i + 1; j < x.size(); ++j) d = std::max(d, distance(x[i], x[j]));
  return d;
}

double total_min_separation(const FiniteSubset& x) {
  if (x.size() < 2) return 0.0;
  double d = kInf;
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = i + 1; j < x.size(); ++j) d = std::min(d, distance(x[i], x[j]));
  return d;
}

double min_separation(const FiniteSubset& x, std::size_t n) {
  if (x.size() > n)
    throw Error(ErrorCode::InvalidInput, "subset has more than n points");
  return x.size() < n ? 0.0 : total_min_separation(x);
}

double gap(const FiniteSubset& x) {
  const std::size_t n = x.size();
  if (n < 2) throw Error(ErrorCode::InvalidInput, "gap of a singleton is undefined");
  // Prim on the complete graph; the gap is the heaviest tree edge.
  std::vector<double> best(n, kInf);
  std::vector<bool> in_tree(n, false);
  best[0] = 0.0;
  double longest = 0.0;
  for (std::size_t step = 0; step < n; ++step) {
    std::size_t u = n;
    for (std::size_t v = 0; v < n; ++v)
      if (!in_tree[v] && (u == n || best[v] < best[u])) u = v;
    in_tree[u] = true;
    longest = std::max(longest, best[u]);
    for (std::size_t v = 0; v < n; ++v)
      if (!in_tree[v]) best[v] = std::min(best[v], distance(x[u], x[v]));
  }
  return longest;
}

Bipartition gap_reducing_decomposition(const FiniteSubset& x) {
  const std::size_t n = x.size();
  if (n < 2) throw Error(ErrorCode::InvalidInput, "gap of a singleton is undefined");
  const double rho = gap(x);

  // Equivalence classes: chains of steps shorter than rho.
  DisjointSets chains(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (distance(x[i], x[j]) < rho) chains.unite(i, j);
  std::vector<std::size_t> class_of(n), roots;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t r = chains.find(i);
    auto it = std::find(roots.begin(), roots.end(), r);
    class_of[i] = static_cast<std::size_t>(it - roots.begin());
    if (it == roots.end()) roots.push_back(r);
  }
  const std::size_t m = roots.size();

  // Class graph: an edge wherever two classes sit exactly rho apart. Classes
  // are numbered by their smallest member, so edge pairs are already in
  // lexicographic order when enumerated this way.
  std::vector<double> class_dist(m * m, kInf);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const std::size_t a = class_of[i], b = class_of[j];
      if (a == b) continue;
      const double d = distance(x[i], x[j]);
      class_dist[a * m + b] = std::min(class_dist[a * m + b], d);
      class_dist[b * m + a] = class_dist[a * m + b];
    }
  std::vector<std::pair<std::size_t, std::size_t>> tree;
  DisjointSets forest(m);
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = a + 1; b < m; ++b)
      if (class_dist[a * m + b] <= rho && forest.unite(a, b)) tree.emplace_back(a, b);
  if (tree.size() + 1 != m)
    throw Error(ErrorCode::InvalidInput, "class graph at the gap is disconnected");

  // Drop the lexicographically smallest tree edge and split.
  const auto removed = *std::min_element(tree.begin(), tree.end());
  DisjointSets halves(m);
  for (const auto& e : tree)
    if (e != removed) halves.unite(e.first, e.second);
  const std::size_t side = halves.find(class_of[0]);
  std::vector<bool> first(n);
  for (std::size_t i = 0; i < n; ++i) first[i] = halves.find(class_of[i]) == side;
  return split_by_mask(x, first);
}

std::vector<std::size_t> match_points(const FiniteSubset& x, const FiniteSubset& y) {
  require_same_space(x, y);
  const std::size_t n = x.size();
  if (y.size() != n) throw Error(ErrorCode::NoMatchingGuarantee, "cardinalities differ");
  const double rho = hausdorff(x, y);
  const bool x_spread = min_separation(x, n) > 2.0 * rho;
  const bool y_spread = min_separation(y, n) > 2.0 * rho;
  if (n > 1 && !x_spread && !y_spread)
    throw Error(ErrorCode::NoMatchingGuarantee,
                "neither subset has minimum separation above 2 d_H");

  auto nearest = [](const FiniteSubset& from, const Point& p) {
    std::size_t best = 0;
    double bd = kInf;
    for (std::size_t j = 0; j < from.size(); ++j) {
      const double d = distance(p, from[j]);
      if (d < bd) {
        bd = d;
        best = j;
      }
    }
    return best;
  };

  std::vector<std::size_t> to_y(n, n);
  if (x_spread || n == 1) {
    // Each ball of radius rho around x_i holds exactly one point of y.
    for (std::size_t i = 0; i < n; ++i) to_y[i] = nearest(y, x[i]);
  } else {
    for (std::size_t j = 0; j < n; ++j) to_y[nearest(x, y[j])] = j;
  }
  std::vector<bool> hit(n, false);
  for (std::size_t i = 0; i < n; ++i) {
    if (to_y[i] >= n || hit[to_y[i]])
      throw Error(ErrorCode::NoMatchingGuarantee, "nearest-point map is not a bijection");
    hit[to_y[i]] = true;
  }
  return to_y;
}

std::optional<Bipartition> two_cluster_decomposition(const FiniteSubset& x, double alpha,
                                                     double beta) {
  if (!(alpha > 0.0 && beta > 0.0))
    throw Error(ErrorCode::InvalidInput, "cluster bounds must be positive");
  const std::size_t n = x.size();
  if (n < 2) return std::nullopt;

  auto valid = [&](const Bipartition& b) {
    return diameter(b.first) <= alpha && diameter(b.second) <= alpha &&
           set_distance(b.first, b.second) >= beta;
  };

  if (alpha < beta) {
    // Clusters must be exactly the components of the "within alpha" graph.
    DisjointSets comp(n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (distance(x[i], x[j]) <= alpha) comp.unite(i, j);
    const std::size_t root = comp.find(0);
    std::vector<bool> first(n);
    std::size_t other_root = n;
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t r = comp.find(i);
      first[i] = r == root;
      if (r != root) {
        if (other_root == n) other_root = r;
        if (r != other_root) return std::nullopt;
      }
    }
    if (other_root == n) return std::nullopt;
    Bipartition b = split_by_mask(x, first);
    if (!valid(b)) return std::nullopt;
    return b;
  }

  if (n > 20) throw Error(ErrorCode::SizeLimit, "exhaustive decomposition search needs |x| <= 20");
  std::optional<Bipartition> found;
  for_each_bipartition(n, [&](std::uint64_t mask) {
    if (found) return;
    Bipartition b = split_by_mask(x, mask_to_flags(n, mask));
    if (valid(b)) found = std::move(b);
  });
  return found;
}

StratumProjection dist_to_lower_stratum(const FiniteSubset& x) {
  if (x.size() < 2) throw Error(ErrorCode::InvalidInput, "a singleton has no lower stratum");
  require_plain_norm(x.norm(), "dist_to_lower_stratum");
  std::size_t a0 = 0, b0 = 1;
  double best = kInf;
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = i + 1; j < x.size(); ++j) {
      const double d = distance(x[i], x[j]);
      if (d < best) {
        best = d;
        a0 = i;
        b0 = j;
      }
    }
  std::vector<Point> pts;
  for (std::size_t i = 0; i < x.size(); ++i)
    if (i != a0 && i != b0) pts.push_back(x[i]);
  pts.push_back(lerp(x[a0], x[b0], 0.5));
  return {0.5 * best, FiniteSubset(x.norm(), std::move(pts))};
}

StratumProjection dist_to_X2(const FiniteSubset& x) {
  const std::size_t n = x.size();
  if (n > kDistToX2Limit)
    throw Error(ErrorCode::SizeLimit,
                "exact dist_H(x, X(2)) is limited to |x| <= " + std::to_string(kDistToX2Limit));
  if (n <= 2) return {0.0, x};

  double best = kInf;
  std::optional<FiniteSubset> witness;
  for_each_bipartition(n, [&](std::uint64_t mask) {
    const Bipartition b = split_by_mask(x, mask_to_flags(n, mask));
    const Ball first = chebyshev_ball(b.first);
    if (first.radius >= best) return;
    const Ball second = chebyshev_ball(b.second);
    const double value = std::max(first.radius, second.radius);
    if (value < best) {
      best = value;
      witness = FiniteSubset(x.norm(), {first.center, second.center});
    }
  });
  return {best, *witness};
}

}  // namespace subsetspace
