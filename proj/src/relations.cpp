#include "subsetspace/relations.hpp"

#include <algorithm>

#include "subsetspace/error.hpp"

namespace subsetspace {

bool is_complete(std::size_t left_size, std::size_t right_size,
                 const std::vector<IndexPair>& pairs) {
  std::vector<bool> l(left_size, false), r(right_size, false);
  for (const auto& [a, b] : pairs) {
    if (a >= left_size || b >= right_size) return false;
    l[a] = true;
    r[b] = true;
  }
  return std::all_of(l.begin(), l.end(), [](bool v) { return v; }) &&
         std::all_of(r.begin(), r.end(), [](bool v) { return v; });
}

CompleteRelation::CompleteRelation(FiniteSubset left, FiniteSubset right,
                                   std::vector<IndexPair> pairs)
    : left_(std::move(left)), right_(std::move(right)), pairs_(std::move(pairs)) {
  require_same_space(left_, right_);
  std::sort(pairs_.begin(), pairs_.end());
  pairs_.erase(std::unique(pairs_.begin(), pairs_.end()), pairs_.end());
  if (!is_complete(left_.size(), right_.size(), pairs_))
    throw Error(ErrorCode::InvalidInput, "relation is not complete");
}

std::size_t CompleteRelation::left_order(const IndexPair& p) const {
  return static_cast<std::size_t>(std::count_if(
      pairs_.begin(), pairs_.end(), [&](const IndexPair& q) { return q.second == p.second; }));
}

std::size_t CompleteRelation::right_order(const IndexPair& p) const {
  return static_cast<std::size_t>(std::count_if(
      pairs_.begin(), pairs_.end(), [&](const IndexPair& q) { return q.first == p.first; }));
}

bool CompleteRelation::is_essential(const IndexPair& p) const {
  return left_order(p) == 1 || right_order(p) == 1;
}

bool CompleteRelation::is_reduced() const {
  return std::all_of(pairs_.begin(), pairs_.end(),
                     [&](const IndexPair& p) { return is_essential(p); });
}

double CompleteRelation::max_pair_distance() const {
  double m = 0.0;
  for (const auto& [a, b] : pairs_) m = std::max(m, distance(left_[a], right_[b]));
  return m;
}

bool CompleteRelation::is_proximal(double tol) const {
  return max_pair_distance() <= hausdorff(left_, right_) + tol;
}

CompleteRelation proximal_complete_relation(const FiniteSubset& x, const FiniteSubset& y) {
  require_same_space(x, y);
  std::vector<IndexPair> pairs;
  for (std::size_t i = 0; i < x.size(); ++i) {
    std::size_t best = 0;
    double bd = kInf;
    for (std::size_t j = 0; j < y.size(); ++j) {
      const double d = distance(x[i], y[j]);
      if (d < bd) {
        bd = d;
        best = j;
      }
    }
    pairs.emplace_back(i, best);
  }
  for (std::size_t j = 0; j < y.size(); ++j) {
    std::size_t best = 0;
    double bd = kInf;
    for (std::size_t i = 0; i < x.size(); ++i) {
      const double d = distance(x[i], y[j]);
      if (d < bd) {
        bd = d;
        best = i;
      }
    }
    pairs.emplace_back(best, j);
  }
  return CompleteRelation(x, y, std::move(pairs));
}

CompleteRelation reduce(const CompleteRelation& r) {
  CompleteRelation current = r;
  for (;;) {
    const auto& pairs = current.pairs();
    auto it = std::find_if(pairs.begin(), pairs.end(),
                           [&](const IndexPair& p) { return !current.is_essential(p); });
    if (it == pairs.end()) return current;
    std::vector<IndexPair> next(pairs.begin(), it);
    next.insert(next.end(), std::next(it), pairs.end());
    current = CompleteRelation(current.left(), current.right(), std::move(next));
  }
}

ReducedParts decompose_reduced(const CompleteRelation& r) {
  if (!r.is_reduced()) throw Error(ErrorCode::InvalidInput, "relation is not reduced");
  ReducedParts parts;
  for (const IndexPair& p : r.pairs()) {
    // In a reduced relation right_order == 1 puts p in the graph of f_1,
    // left_order == 1 in the graph of g_1; both at once is the bijection h.
    const bool functional_left = r.right_order(p) == 1;
    const bool functional_right = r.left_order(p) == 1;
    if (functional_left && functional_right)
      parts.h_part.push_back(p);
    else if (functional_left)
      parts.f_part.push_back(p);
    else
      parts.g_part.push_back(p);
  }
  return parts;
}

ProximalSplit proximal_split(const FiniteSubset& x, const FiniteSubset& y) {
  const CompleteRelation reduced = reduce(proximal_complete_relation(x, y));
  const ReducedParts parts = decompose_reduced(reduced);
  ProximalSplit s;
  s.f = parts.f_part;
  s.f.insert(s.f.end(), parts.h_part.begin(), parts.h_part.end());
  std::sort(s.f.begin(), s.f.end());
  s.g = parts.g_part;

  auto collect = [](const std::vector<IndexPair>& pairs, bool left) {
    std::vector<std::size_t> out;
    for (const auto& p : pairs) out.push_back(left ? p.first : p.second);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  };
  s.x_prime = collect(s.f, true);
  s.y_prime = collect(s.f, false);
  s.y_dprime = collect(s.g, false);
  s.x_dprime = collect(s.g, true);
  return s;
}

}  // namespace subsetspace
