#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "subsetspace/subsets.hpp"

namespace subsetspace {

/// (left index, right index).
using IndexPair = std::pair<std::size_t, std::size_t>;

/// A relation R between two finite subsets, stored as sorted index pairs.
/// Construction enforces completeness: every index on both sides occurs.
class CompleteRelation {
 public:
  CompleteRelation(FiniteSubset left, FiniteSubset right, std::vector<IndexPair> pairs);

  const FiniteSubset& left() const noexcept { return left_; }
  const FiniteSubset& right() const noexcept { return right_; }
  const std::vector<IndexPair>& pairs() const noexcept { return pairs_; }
  std::size_t size() const noexcept { return pairs_.size(); }

  /// Number of pairs sharing the right element of p (left order) and the
  /// left element of p (right order).
  std::size_t left_order(const IndexPair& p) const;
  std::size_t right_order(const IndexPair& p) const;
  /// Removing an essential pair breaks completeness.
  bool is_essential(const IndexPair& p) const;
  bool is_reduced() const;
  /// Every pair within d_H(left, right) + tol.
  bool is_proximal(double tol = kDefaultTolerance) const;
  double max_pair_distance() const;

 private:
  FiniteSubset left_;
  FiniteSubset right_;
  std::vector<IndexPair> pairs_;
};

bool is_complete(std::size_t left_size, std::size_t right_size,
                 const std::vector<IndexPair>& pairs);

/// Every left point paired with its nearest right point and vice versa;
/// ties go to the smallest index.
CompleteRelation proximal_complete_relation(const FiniteSubset& x, const FiniteSubset& y);

/// Deletes inessential pairs, scanning in lexicographic order and restarting
/// after each deletion, until every pair is essential.
CompleteRelation reduce(const CompleteRelation& r);

/// Partition of a reduced relation into a left-functional part {(a, f(a))},
/// a bijective part {(a, h(a))} and a right-functional part {(g(b), b)}.
struct ReducedParts {
  std::vector<IndexPair> f_part;
  std::vector<IndexPair> h_part;
  std::vector<IndexPair> g_part;
};

ReducedParts decompose_reduced(const CompleteRelation& r);

/// x = x' + x'' and y = y' + y'' (disjoint) with proximal surjections
/// f : x' -> y' and g : y'' -> x''. Index vectors refer to x and y; f and g
/// are stored as pair lists (x index, y index). The bijective part of the
/// reduced relation is folded into f.
struct ProximalSplit {
  std::vector<std::size_t> x_prime;
  std::vector<std::size_t> x_dprime;
  std::vector<std::size_t> y_prime;
  std::vector<std::size_t> y_dprime;
  std::vector<IndexPair> f;
  std::vector<IndexPair> g;
};

ProximalSplit proximal_split(const FiniteSubset& x, const FiniteSubset& y);

}  // namespace subsetspace
