#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "subsetspace/error.hpp"
#include "subsetspace/retract.hpp"
#include "subsetspace/selector.hpp"
#include "subsetspace/verify.hpp"

using namespace subsetspace;

namespace {

FiniteSubset line(std::initializer_list<double> v) { return FiniteSubset::on_line(v); }

FiniteSubset plane(const std::vector<std::vector<double>>& c, double p = 2.0) {
  return FiniteSubset::from_coords(NormDescriptor::make(p, 1.0, 2), c);
}

bool near(const FiniteSubset& a, const FiniteSubset& b, double tol) {
  return a.size() == b.size() && hausdorff(a, b) <= tol;
}

bool in_hull(const FiniteSubset& out, const FiniteSubset& x, double tol = 1e-8) {
  for (const Point& q : out)
    if (oracle::hull_distance_enumeration(q, x.points()) > tol) return false;
  return true;
}

FiniteSubset affine(const FiniteSubset& x, double t, const std::vector<double>& v) {
  std::vector<std::vector<double>> c;
  for (const Point& p : x) {
    std::vector<double> q(p.coords().begin(), p.coords().end());
    for (std::size_t k = 0; k < q.size(); ++k) q[k] = t * q[k] + v[k];
    c.push_back(q);
  }
  return FiniteSubset::from_coords(x.norm(), c);
}

}  // namespace

TEST_CASE("partitions of unity") {
  const auto a = PartitionOfUnity::three_point();
  CHECK(a.t_low() == 0.2);
  CHECK(a.t_high() == 0.25);
  CHECK(a.phi1(0.1) == 1.0);
  CHECK(a.phi1(0.3) == 0.0);
  CHECK(a.phi1(0.225) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(a.lipschitz() == doctest::Approx(20.0).epsilon(1e-12));
  const auto b = PartitionOfUnity::skeleton(7.0);
  CHECK(b.t_low() == doctest::Approx(1.0 / 21));
  CHECK(b.t_high() == doctest::Approx(1.0 / 14));
  CHECK(b.phi1(0.5 * (1.0 / 21 + 1.0 / 14)) == doctest::Approx(0.5).epsilon(1e-12));
  for (double t = -0.1; t < 0.4; t += 0.001) {
    REQUIRE(a.phi1(t) + a.phi2(t) == 1.0);
    REQUIRE(a.phi1(t) >= 0.0);
    REQUIRE(a.phi1(t) <= 1.0);
  }
  CHECK_THROWS_AS(PartitionOfUnity::skeleton(6.0), Error);
  CHECK_THROWS_AS(PartitionOfUnity::skeleton(std::nan("")), Error);
}

TEST_CASE("minkowski combination") {
  const auto s = minkowski_combination(0.5, line({0.1125, 1}), 0.5, line({1.225 / 3}));
  CHECK(near(s, line({0.05625 + 1.225 / 6, 0.5 + 1.225 / 6}), 1e-14));
  CHECK(minkowski_combination(1.0, line({0, 1}), 0.0, line({5})) == line({0, 1}));
  CHECK(minkowski_combination(1.0, line({0, 1}), 1.0, line({0, 1})) == line({0, 1, 2}));
}

TEST_CASE("retract_pair_average examples") {
  CHECK(retract_pair_average(line({0, 4})) == line({2}));
  CHECK(retract_pair_average(line({7})) == line({7}));
  CHECK(retract_pair_average(plane({{0, 0}, {2, 4}})) == plane({{1, 2}}));
  CHECK_THROWS_AS(retract_pair_average(line({0, 1, 2})), Error);
}

TEST_CASE("interpolation map examples") {
  CHECK(near(interpolation_map_3(line({0, 0.2, 1})), line({0.1, 1}), 1e-15));
  CHECK(near(interpolation_map_3(line({0, 0.5, 1})), line({0.5}), 1e-15));
  const auto mid = interpolation_map_3(line({0, 0.225, 1}));
  REQUIRE(mid.size() == 2);
  // 0.5 {0.1125, 1} + 0.5 {1.225/3}.
  CHECK(mid[0][0] == doctest::Approx(0.26041666666666667).epsilon(1e-14));
  CHECK(mid[1][0] == doctest::Approx(0.70416666666666667).epsilon(1e-14));
  CHECK(interpolation_map_3(line({0, 1})) == line({0, 1}));
  CHECK_THROWS_AS(interpolation_map_3(line({1, 2, 3})), Error);
  CHECK_THROWS_AS(interpolation_map_3(line({0, 0.5, 2})), Error);
}

TEST_CASE("retract_3_to_2 examples") {
  CHECK(near(retract_3_to_2(line({3, 3.2, 4})), line({3.1, 4}), 1e-14));
  CHECK(retract_3_to_2(line({5})) == line({5}));
  CHECK(retract_3_to_2(line({0, 2})) == line({0, 2}));
  const auto out = retract_3_to_2(line({10, 12.25, 20}));
  CHECK(near(out, affine(interpolation_map_3(line({0, 0.225, 1})), 10.0, {10.0}), 1e-12));
}

TEST_CASE("retract_3_to_2 properties on random inputs") {
  std::mt19937_64 rng(41);
  std::uniform_real_distribution<double> u(-3, 3), s(0.1, 5);
  for (int k = 0; k < 2000; ++k) {
    const NormDescriptor nd = NormDescriptor::make(oracle::p_choice(rng), 1.0, 1 + k % 3);
    const auto x = oracle::random_subset(rng, nd, 3);
    const auto r = retract_3_to_2(x);
    REQUIRE(r.size() <= 2);
    REQUIRE(in_hull(r, x));
    const double t = s(rng);
    std::vector<double> v(static_cast<std::size_t>(nd.dim));
    for (double& c : v) c = u(rng);
    REQUIRE(near(retract_3_to_2(affine(x, t, v)), affine(r, t, v), 1e-9 * (1 + t)));
    const auto two = oracle::random_subset(rng, nd, 2);
    REQUIRE(retract_3_to_2(two) == two);
  }
}

TEST_CASE("steiner point") {
  CHECK(steiner_point(line({3})) == line({3})[0]);
  CHECK(steiner_point(line({0, 1}))[0] == 0.5);
  const Point c = steiner_point(plane({{0, 0}, {1, 0}, {0, 1}, {1, 1}}));
  CHECK(c[0] == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(c[1] == doctest::Approx(0.5).epsilon(1e-14));

  // Planar formula against a direct quadrature of the support points.
  std::mt19937_64 rng(42);
  for (int k = 0; k < 30; ++k) {
    const auto x = oracle::random_subset(rng, NormDescriptor::make(2, 1, 2), 1 + k % 7);
    const Point sp = steiner_point(x);
    const auto q = oracle::steiner_quadrature_2d(x);
    REQUIRE(sp[0] == doctest::Approx(q[0]).epsilon(1e-4).scale(1.0));
    REQUIRE(sp[1] == doctest::Approx(q[1]).epsilon(1e-4).scale(1.0));
    REQUIRE(oracle::hull_distance_enumeration(sp, x.points()) <= 1e-12);
  }

  // Cube corners in R^3: symmetry forces the center up to sampling error.
  std::vector<std::vector<double>> cube;
  for (int m = 0; m < 8; ++m) cube.push_back({double(m & 1), double((m >> 1) & 1), double((m >> 2) & 1)});
  const Point cc = steiner_point(FiniteSubset::from_coords(NormDescriptor::make(2, 1, 3), cube));
  for (int i = 0; i < 3; ++i) CHECK(cc[i] == doctest::Approx(0.5).epsilon(0.01));
}

TEST_CASE("retract_n_to_1 examples") {
  CHECK(retract_n_to_1(line({4})) == line({4}));
  CHECK(retract_n_to_1(line({0, 1})) == line({0.5}));
  CHECK(near(retract_n_to_1(plane({{0, 0}, {1, 0}, {0, 1}, {1, 1}})), plane({{0.5, 0.5}}), 1e-14));
}

TEST_CASE("retract_n_to_2 examples") {
  CHECK(near(retract_n_to_2(line({0, 0.05, 0.95, 1})), line({0.025, 0.975}), 1e-14));
  CHECK(retract_n_to_2(line({0, 2})) == line({0, 2}));
  CHECK(retract_n_to_2(line({1})) == line({1}));
  CHECK(near(retract_n_to_2(line({0, 0.5, 1})), line({0.5}), 1e-14));
  CHECK_THROWS_AS(retract_n_to_2(line({0, 0.5, 1}), 5.0), Error);
  std::vector<std::vector<double>> many;
  for (int i = 0; i < 13; ++i) many.push_back({double(i)});
  try {
    retract_n_to_2(FiniteSubset::from_coords(NormDescriptor::make(2, 1, 1), many));
    FAIL("expected size-limit");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::SizeLimit);
  }
}

TEST_CASE("retract_n_to_2 fixes X(2) and stays in the hull") {
  std::mt19937_64 rng(43);
  for (int k = 0; k < 600; ++k) {
    const NormDescriptor nd = NormDescriptor::make(oracle::p_choice(rng), 1.0, 1 + k % 2);
    const auto x = oracle::random_subset(rng, nd, 3 + k % 5, 1.0);
    const auto r = retract_n_to_2(x);
    REQUIRE(r.size() <= 2);
    REQUIRE(in_hull(r, x));
    const auto two = oracle::random_subset(rng, nd, 2);
    REQUIRE(retract_n_to_2(two) == two);
  }
}

TEST_CASE("retractions are identity on lower strata") {
  std::mt19937_64 rng(44);
  for (int k = 0; k < 1000; ++k) {
    const NormDescriptor nd = NormDescriptor::make(oracle::p_choice(rng), 1.0, 1 + k % 3);
    const auto one = oracle::random_subset(rng, nd, 1);
    REQUIRE(retract_pair_average(one) == one);
    REQUIRE(retract_3_to_2(one) == one);
    REQUIRE(retract_n_to_1(one) == one);
    REQUIRE(retract_n_to_2(one) == one);
  }
}
