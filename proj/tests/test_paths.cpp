#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "subsetspace/error.hpp"
#include "subsetspace/paths.hpp"
#include "subsetspace/verify.hpp"

using namespace subsetspace;

namespace {

FiniteSubset line(std::initializer_list<double> v) { return FiniteSubset::on_line(v); }

using Pairs = std::vector<IndexPair>;

/// All-pairs grid ratio, the definition the speed profile shortcuts.
double speed_all_pairs(const SubsetPath& p, std::size_t grid) {
  std::vector<FiniteSubset> s;
  for (std::size_t i = 0; i < grid; ++i)
    s.push_back(p.sample(i + 1 == grid ? 1.0 : static_cast<double>(i) / static_cast<double>(grid - 1)));
  const double ends = hausdorff(s.front(), s.back());
  double worst = 0.0;
  for (std::size_t i = 0; i < grid; ++i)
    for (std::size_t j = i + 1; j < grid; ++j)
      worst = std::max(worst, hausdorff(s[i], s[j]) /
                                  (static_cast<double>(j - i) / static_cast<double>(grid - 1) * ends));
  return worst;
}

}  // namespace

TEST_CASE("quasigeodesic from relation examples") {
  const auto p1 = quasigeodesic_from_relation(CompleteRelation(line({0}), line({2}), Pairs{{0, 0}}), 1.0);
  CHECK(p1.sample(0.5) == line({1}));

  const auto x = line({0, 10}), y = line({1, 9});
  const auto p2 = quasigeodesic_from_relation(CompleteRelation(x, y, Pairs{{0, 0}, {1, 1}}), 1.0);
  CHECK(p2.sample(0.5) == line({0.5, 9.5}));

  const auto p3 = quasigeodesic_from_relation(
      CompleteRelation(line({0}), line({1, 2}), Pairs{{0, 0}, {0, 1}}), 2.0);
  CHECK(p3.sample(0.5) == line({0.5, 1}));

  // (0 -> 9) is longer than d_H = 1.
  CHECK_THROWS_AS(
      quasigeodesic_from_relation(CompleteRelation(x, y, Pairs{{0, 1}, {1, 0}}), 1.0), Error);
  try {
    quasigeodesic_from_relation(CompleteRelation(x, y, Pairs{{0, 1}, {1, 0}}), 1.0);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotALambdaRelation);
  }
}

TEST_CASE("two-quasiconvex path examples") {
  const auto x = line({0, 10}), y = line({0.5, 9.5});
  const auto p = two_quasiconvex_path(x, y);
  CHECK(path_length(p, 1001) == doctest::Approx(hausdorff(x, y)).epsilon(1e-9));
  CHECK(path_speed_profile(p, 1001) <= 1.0 + 1e-9);

  const auto c = two_quasiconvex_path(x, x);
  CHECK(path_length(c, 11) == 0.0);
  CHECK_THROWS_AS(path_speed_profile(c, 11), Error);

  const auto a = line({-1, 1, 7.5}), b = line({-1.5, 5, 7});
  CHECK(hausdorff(a, b) == 2.5);
  const auto q = two_quasiconvex_path(a, b);
  CHECK(path_length(q, 1001) <= 5.0 + 1e-9);
  CHECK(path_speed_profile(q, 1001) <= 2.0 + 1e-9);
  CHECK(q.sample(0.0) == a);
  CHECK(q.sample(1.0) == b);
}

TEST_CASE("geodesic in a larger stratum examples") {
  const auto x = line({0, 1}), y = line({0.5});
  const auto g = geodesic_in_larger_stratum(x, y);
  CHECK(g.cardinality_bound() == 2);
  for (const auto& s : g.legs().front()) CHECK(distance(s.from, s.to) == 0.5);
  CHECK(path_speed_profile(g, 101) <= 1.0 + 1e-12);
  CHECK(path_length(geodesic_in_larger_stratum(x, x), 11) == 0.0);

  // Two clusters of three with the reduced relation splitting one point into
  // two: the path leaves X(3).
  const auto a = line({0, 1, 100}), b = line({0.5, 99, 101});
  const auto h = geodesic_in_larger_stratum(a, b);
  CHECK(h.cardinality_bound() == 4);
  CHECK(h.sample(0.5).size() == 4);
  CHECK(path_speed_profile(h, 1001) <= 1.0 + 1e-9);
}

TEST_CASE("random paths respect their speed and cardinality bounds") {
  std::mt19937_64 rng(31);
  for (int k = 0; k < 300; ++k) {
    const NormDescriptor nd = NormDescriptor::make(oracle::p_choice(rng), 1.0, 1 + k % 3);
    const auto x = oracle::random_subset(rng, nd, 1 + k % 6);
    const auto y = oracle::random_subset(rng, nd, 1 + (k / 6) % 6);
    if (x == y) continue;
    const auto q = two_quasiconvex_path(x, y);
    const auto g = geodesic_in_larger_stratum(x, y);
    REQUIRE(q.sample(0.0) == x);
    REQUIRE(q.sample(1.0) == y);
    REQUIRE(g.sample(0.0) == x);
    REQUIRE(g.sample(1.0) == y);
    REQUIRE(q.cardinality_bound() == std::max(x.size(), y.size()));
    for (int i = 0; i <= 1000; i += 7) {
      REQUIRE(q.sample(i / 1000.0).size() <= q.cardinality_bound());
      REQUIRE(g.sample(i / 1000.0).size() <= g.cardinality_bound());
    }
    REQUIRE(path_speed_profile(q, 201) <= 2.0 + 1e-9);
    REQUIRE(path_speed_profile(g, 201) <= 1.0 + 1e-9);
    REQUIRE(path_length(q, 201) <= 2.0 * hausdorff(x, y) + 1e-9);
  }
}

TEST_CASE("speed profile matches the all-pairs definition") {
  std::mt19937_64 rng(32);
  for (int k = 0; k < 40; ++k) {
    const NormDescriptor nd = NormDescriptor::make(oracle::p_choice(rng), 1.0, 2);
    const auto x = oracle::random_subset(rng, nd, 2 + k % 4);
    const auto y = oracle::random_subset(rng, nd, 1 + k % 5);
    const auto q = two_quasiconvex_path(x, y);
    REQUIRE(path_speed_profile(q, 41) == doctest::Approx(speed_all_pairs(q, 41)).epsilon(1e-9));
  }
  const auto seg = quasigeodesic_from_relation(CompleteRelation(line({0}), line({2}), Pairs{{0, 0}}), 1.0);
  CHECK(path_speed_profile(seg, 11) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK_THROWS_AS(path_speed_profile(seg, 1), Error);
}

TEST_CASE("spaced pairs force quasiconvexity constant 2") {
  for (std::size_t n : {3u, 4u}) {
    const auto [x, y] = spaced_pair(n, 5.0);
    const double dh = hausdorff(x, y);
    const auto q = two_quasiconvex_path(x, y);
    // Any point of any path is at least d_H from one end.
    const FiniteSubset mid = q.sample(0.5);
    CHECK(std::max(hausdorff(x, mid), hausdorff(mid, y)) >= dh - 1e-9);
    CHECK(spaced_pair_obstruction(x, y, n, 2000, 5) >= dh - 1e-9);
  }
}

TEST_CASE("snowflaked spaces have no segment paths") {
  const auto x = FiniteSubset::on_line({0, 1}, 2.0, 0.5), y = FiniteSubset::on_line({2}, 2.0, 0.5);
  CHECK_THROWS_AS(two_quasiconvex_path(x, y), Error);
}
