// Acceptance run: one PASS/FAIL line per criterion. Exit status is nonzero if
// any asserted criterion fails; criterion 9 is reported only.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <optional>
#include <random>
#include <sstream>
#include <string>

#include "oracles.hpp"
#include "subsetspace/flow.hpp"
#include "subsetspace/paths.hpp"
#include "subsetspace/retract.hpp"
#include "subsetspace/verify.hpp"

using namespace subsetspace;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

constexpr double kPs[3] = {1.0, 2.0, kInf};

std::string p_name(double p) {
  if (std::isinf(p)) return "inf";
  std::ostringstream os;
  os << p;
  return os.str();
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

FiniteSubset random_set(std::mt19937_64& rng, int dim, double p, std::size_t k, double box = 1.0) {
  return oracle::random_subset(rng, NormDescriptor::make(p, 1.0, dim), k, box);
}

std::size_t pick(std::mt19937_64& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

SamplerSpec mixed(double p, int dim, std::size_t lo, std::size_t hi) {
  SamplerSpec s;
  s.kind = SamplerKind::Mixed;
  s.norm = NormDescriptor::make(p, 1.0, dim);
  s.min_points = lo;
  s.max_points = hi;
  return s;
}

std::vector<double> coord_sum(const std::vector<Point>& c) {
  std::vector<double> s(c.front().coords().size(), 0.0);
  for (const Point& p : c)
    for (std::size_t k = 0; k < s.size(); ++k) s[k] += p[k];
  return s;
}

SubsetMap flow_map(std::size_t n) {
  FlowOptions o;
  o.n = n;
  o.record_trajectory = false;
  return [o](const FiniteSubset& x) { return flow_retract(x, o).output; };
}

// 1. Hausdorff max-min vs neighbourhood characterization.
Outcome hausdorff_oracle() {
  std::mt19937_64 rng(101);
  double worst = 0.0;
  for (int k = 0; k < 10000; ++k) {
    const int dim = static_cast<int>(pick(rng, 1, 4));
    const double p = kPs[k % 3];
    const auto x = random_set(rng, dim, p, pick(rng, 1, 8));
    const auto y = random_set(rng, dim, p, pick(rng, 1, 8));
    worst = std::max(worst, std::abs(hausdorff(x, y) - oracle::hausdorff_neighbourhood(x, y)));
  }
  return {worst <= 1e-12, "max |diff| " + fmt(worst) + " on 1e4 pairs"};
}

// 2. diameter, delta_n, gap are 2-Lipschitz.
Outcome two_lipschitz() {
  double worst[3] = {0, 0, 0};
  std::size_t used = 0;
  for (int k = 0; k < 10000; ++k) {
    const double p = kPs[k % 3];
    const int dim = 1 + k % 3;
    const std::size_t n = 2 + k % 7;
    std::mt19937_64 rng(trial_seed(102, static_cast<std::uint64_t>(k)));
    const auto [x, y] = sample_pair(mixed(p, dim, 2, n), rng);
    const double dh = hausdorff(x, y);
    if (dh == 0.0) continue;
    ++used;
    const std::size_t m = std::max(x.size(), y.size());
    const double slack = 2.0 * dh + 1e-9;
    worst[0] = std::max(worst[0], std::abs(diameter(x) - diameter(y)) - slack);
    worst[1] = std::max(worst[1], std::abs(min_separation(x, m) - min_separation(y, m)) - slack);
    if (x.size() > 1 && y.size() > 1) worst[2] = std::max(worst[2], std::abs(gap(x) - gap(y)) - slack);
  }
  const bool ok = worst[0] <= 0 && worst[1] <= 0 && worst[2] <= 0;
  return {ok, "max excess over 2 d_H + 1e-9: diam " + fmt(worst[0]) + ", delta " + fmt(worst[1]) +
                  ", gap " + fmt(worst[2]) + " (" + std::to_string(used) + " pairs)"};
}

// 3. MST gap vs bipartition brute force; decomposition post-conditions.
Outcome gap_oracle() {
  std::mt19937_64 rng(103);
  std::size_t mismatches = 0, bad_split = 0;
  for (int k = 0; k < 1000; ++k) {
    const auto x = random_set(rng, 1 + k % 3, kPs[k % 3], pick(rng, 2, 10));
    const double g = gap(x);
    if (g != oracle::gap_bruteforce(x)) ++mismatches;
    const Bipartition b = gap_reducing_decomposition(x);
    const auto part_gap = [](const FiniteSubset& s) { return s.size() < 2 ? 0.0 : gap(s); };
    if (b.first.size() + b.second.size() != x.size() || set_distance(b.first, b.second) != g ||
        part_gap(b.first) > g || part_gap(b.second) > g)
      ++bad_split;
  }
  return {mismatches == 0 && bad_split == 0, std::to_string(mismatches) + " gap mismatches, " +
                                                 std::to_string(bad_split) + " bad decompositions in 1e3 sets"};
}

// 4. Path speed profiles and the spaced-pair obstruction.
Outcome quasiconvexity() {
  std::mt19937_64 rng(104);
  double q_worst = 0, g_worst = 0;
  std::size_t over_card = 0;
  for (int k = 0; k < 1000; ++k) {
    const double p = kPs[k % 3];
    const int dim = 1 + k % 3;
    const auto x = random_set(rng, dim, p, pick(rng, 1, 6));
    const auto y = random_set(rng, dim, p, pick(rng, 1, 6));
    const auto q = two_quasiconvex_path(x, y);
    const auto g = geodesic_in_larger_stratum(x, y);
    q_worst = std::max(q_worst, path_speed_profile(q, 1001));
    g_worst = std::max(g_worst, path_speed_profile(g, 1001));
    for (int i = 0; i <= 1000; i += 50)
      if (q.sample(i / 1000.0).size() > std::max(x.size(), y.size())) ++over_card;
  }
  double obstruction = kInf;
  for (std::size_t n : {3u, 4u}) {
    const auto [x, y] = spaced_pair(n, 5.0);
    obstruction = std::min(obstruction, spaced_pair_obstruction(x, y, n, 1000, 104 + n) - hausdorff(x, y));
  }
  const bool ok = q_worst <= 2 + 1e-6 && g_worst <= 1 + 1e-6 && over_card == 0 && obstruction >= -1e-9;
  return {ok, "2-quasiconvex profile " + fmt(q_worst) + ", geodesic profile " + fmt(g_worst) +
                  ", spaced-pair excess " + fmt(obstruction)};
}

// 5. n = 2 flow against the closed form.
Outcome flow_n2() {
  std::mt19937_64 rng(105);
  double traj = 0, mid = 0, tc = 0;
  for (int k = 0; k < 100; ++k) {
    const auto x = random_set(rng, 1 + k % 3, kPs[k % 3], 2);
    const auto r = flow_retract(x);
    const double half = distance(x[0], x[1]) / 2;
    tc = std::max(tc, std::abs(r.collision_time - half));
    mid = std::max(mid, r.output.size() == 1 ? distance(r.output[0], lerp(x[0], x[1], 0.5)) : kInf);
    for (const auto& s : r.trajectory) {
      const auto c = flow_closed_form_n2(x, std::min(s.time, half));
      for (std::size_t i = 0; i < 2; ++i) traj = std::max(traj, distance(s.config[i], c[i]));
    }
    // 101-point time grid; both trajectories are straight lines, so the
    // numeric one is interpolated between recorded steps.
    for (int g = 0; g <= 100; ++g) {
      const double t = half * g / 100.0;
      std::size_t j = 1;
      while (j + 1 < r.trajectory.size() && r.trajectory[j].time < t) ++j;
      const auto& a = r.trajectory[j - 1];
      const auto& b = r.trajectory[j];
      const double w = b.time > a.time ? std::clamp((t - a.time) / (b.time - a.time), 0.0, 1.0) : 0.0;
      const auto c = flow_closed_form_n2(x, t);
      for (std::size_t i = 0; i < 2; ++i)
        traj = std::max(traj, distance(lerp(a.config[i], b.config[i], w), c[i]));
    }
  }
  return {traj <= 1e-8 && mid <= 1e-8 && tc <= 1e-8,
          "trajectory dev " + fmt(traj) + ", midpoint dev " + fmt(mid) + ", |T - delta/2| " + fmt(tc)};
}

struct FlowSweep {
  double bracket_excess = -kInf;
  double hull = 0;
  double com = 0;
  double displacement_excess = -kInf;
  std::size_t failures = 0;
};

FlowSweep& flow_sweep() {
  static FlowSweep s = [] {
    FlowSweep w;
    std::mt19937_64 rng(106);
    for (int k = 0; k < 1000; ++k) {
      const std::size_t n = 3 + k % 4;
      const double p = kPs[(k / 4) % 3];
      const int dim = 1 + (k / 12) % 3;
      const auto x = random_set(rng, dim, p, n);
      std::optional<FlowResult> fr;
      try {
        fr = flow_retract(x);
      } catch (const std::exception&) {
        ++w.failures;
        continue;
      }
      const FlowResult& r = *fr;
      const double delta = min_separation(x, n);
      const double tol = 1e-6 * delta;
      w.bracket_excess = std::max({w.bracket_excess, delta / (2.0 * (n - 1)) - tol - r.collision_time,
                                   r.collision_time - delta / 2 - tol});
      if (r.output.size() >= n) ++w.failures;
      w.displacement_excess =
          std::max(w.displacement_excess, hausdorff(x, r.output) - (n - 1) / 2.0 * delta);
      const auto com0 = coord_sum(x.points());
      for (const auto& smp : r.trajectory) {
        const auto c = coord_sum(smp.config);
        for (std::size_t q = 0; q < c.size(); ++q) w.com = std::max(w.com, std::abs(c[q] - com0[q]));
        for (const Point& u : smp.config) w.hull = std::max(w.hull, distance_to_hull(u, x.points()));
      }
      for (const Point& u : r.output) w.hull = std::max(w.hull, distance_to_hull(u, x.points()));
    }
    return w;
  }();
  return s;
}

// 6. Collision-time bracket.
Outcome collision_bracket() {
  const FlowSweep& w = flow_sweep();
  return {w.failures == 0 && w.bracket_excess <= 0,
          "max bracket excess " + fmt(w.bracket_excess) + ", displacement excess " +
              fmt(w.displacement_excess) + ", " + std::to_string(w.failures) + " failures in 1e3 flows"};
}

// 7. Hull invariance and center of mass along the same trajectories.
Outcome hull_and_mass() {
  const FlowSweep& w = flow_sweep();
  return {w.failures == 0 && w.hull <= 1e-8 && w.com <= 1e-7,
          "max hull distance " + fmt(w.hull) + ", max center-of-mass drift " + fmt(w.com)};
}

// 8. Hoelder bound over (n, p) cells.
Outcome holder_cells() {
  double worst = kInf;
  std::string where;
  std::size_t near = 0;
  for (std::size_t n = 2; n <= 5; ++n)
    for (double p : kPs) {
      const SamplerSpec s = mixed(p, 2, 1, n);
      for (std::uint64_t i = 0; i < 10000; ++i) {
        std::mt19937_64 rng(trial_seed(108 + n, i));
        near += pick_regime(s, rng) == SamplerKind::NearCollision;
      }
      const HolderReport h = check_holder(flow_map(n), n, s, 10000, 108 + n);
      if (h.worst_margin < worst) {
        worst = h.worst_margin;
        where = "n=" + std::to_string(n) + " p=" + p_name(p);
      }
    }
  return {worst >= -1e-9, "worst margin " + fmt(worst) + " at " + where + "; " + std::to_string(near) +
                              " near-collision pairs of 1.2e5"};
}

// 9. Euclidean Lipschitz surrogate (reported).
Outcome euclidean_lipschitz() {
  std::string detail;
  bool ok = true;
  for (std::size_t n = 2; n <= 5; ++n) {
    const double nn = static_cast<double>(n);
    const double bound = 1.1 * std::max(std::pow(nn, 1.5), 2 * nn - 1);
    const auto e = estimate_lipschitz("flow", flow_map(n), mixed(2.0, 2, 1, n), 10000, 109 + n);
    ok = ok && e.max_ratio <= bound;
    detail += "n=" + std::to_string(n) + " " + fmt(e.max_ratio) + "/" + fmt(bound) + (n < 5 ? ", " : "");
  }
  return {ok, "ratio/limit " + detail};
}

// 10. retract_3_to_2: identity on X(2), ratio, hull.
Outcome retract3() {
  std::mt19937_64 rng(110);
  std::size_t not_fixed = 0;
  for (int k = 0; k < 1000; ++k) {
    const auto x = random_set(rng, 1 + k % 3, kPs[k % 3], pick(rng, 1, 2), 10.0);
    if (!(retract_3_to_2(x) == x)) ++not_fixed;
  }
  double ratio = 0, low = kInf, hull = 0;
  for (double p : kPs) {
    SamplerSpec s = mixed(p, 2, 1, 3);
    const auto e = estimate_lipschitz("retract3", retract_3_to_2, s, 100000 / 3 + 1, 110);
    ratio = std::max(ratio, e.max_ratio);
    low = std::min(low, e.max_ratio);
    for (std::uint64_t i = 0; i < 100000 / 3 + 1; ++i) {
      std::mt19937_64 r(trial_seed(111, i));
      const auto [x, y] = sample_pair(s, r);
      for (const FiniteSubset* z : {&x, &y})
        for (const Point& u : retract_3_to_2(*z)) hull = std::max(hull, distance_to_hull(u, z->points()));
    }
  }
  return {not_fixed == 0 && ratio <= 731 && low >= 1 && hull <= 1e-8,
          std::to_string(not_fixed) + " X(2) inputs moved, max ratio " + fmt(ratio) + ", max hull distance " +
              fmt(hull)};
}

// 11. retract_pair_average is 1-Lipschitz.
Outcome pair_average() {
  double ratio = 0;
  for (double p : kPs) {
    const auto e = estimate_lipschitz("retract2", retract_pair_average, mixed(p, 2, 1, 2),
                                      100000 / 3 + 1, 111);
    ratio = std::max(ratio, e.max_ratio);
  }
  return {ratio <= 1 + 1e-9, "max ratio " + fmt(ratio) + " on 1e5 pairs"};
}

// 12. d_H in the snowflaked space is the snowflaked d_H.
Outcome snowflake() {
  std::mt19937_64 rng(112);
  double worst = 0;
  for (double eps : {0.5, 1.0 / 3}) {
    for (int k = 0; k < 10000; ++k) {
      const double p = kPs[k % 3];
      const int dim = 1 + k % 3;
      const auto x = random_set(rng, dim, p, pick(rng, 1, 6));
      const auto y = random_set(rng, dim, p, pick(rng, 1, 6));
      const NormDescriptor sn = NormDescriptor::make(p, eps, dim);
      const auto lift = [&](const FiniteSubset& s) {
        std::vector<Point> pts;
        for (const Point& a : s) pts.emplace_back(sn, std::vector<double>(a.coords().begin(), a.coords().end()));
        return FiniteSubset(sn, pts);
      };
      worst = std::max(worst, std::abs(hausdorff(lift(x), lift(y)) - std::pow(hausdorff(x, y), eps)));
    }
  }
  return {worst <= 1e-12, "max |diff| " + fmt(worst) + " on 2e4 pairs"};
}

// 13. Hexagon fixture.
Outcome bip() {
  const auto c = verify_bip_hexagon(bip_hexagon(), 401, 0.01);
  return {c.pairwise_intersect && !c.common_point_found,
          "max pairwise d_H " + fmt(c.max_pairwise) + ", common point " +
              (c.common_point_found ? "found" : "not found") + " on a 401x401 grid"};
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    double limit_s;
    bool asserted;
    std::function<Outcome()> run;
  };
  const Criterion all[] = {
      {1, "Hausdorff oracle equivalence", 10, true, hausdorff_oracle},
      {2, "2-Lipschitz functionals", 10, true, two_lipschitz},
      {3, "gap MST and decomposition", 30, true, gap_oracle},
      {4, "quasiconvexity", 60, true, quasiconvexity},
      {5, "flow n=2 exactness", 10, true, flow_n2},
      {6, "collision-time bracket", 300, true, collision_bracket},
      {7, "hull invariance and center of mass", 300, true, hull_and_mass},
      {8, "Hoelder bound", 600, true, holder_cells},
      {9, "Euclidean Lipschitz surrogate", 0, false, euclidean_lipschitz},
      {10, "retract_3_to_2", 120, true, retract3},
      {11, "retract_pair_average", 0, true, pair_average},
      {12, "snowflake commutation", 0, true, snowflake},
      {13, "BIP hexagon", 5, true, bip},
  };
  int failed = 0;
  for (const auto& c : all) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool in_time = c.limit_s <= 0 || secs < c.limit_s;
    const bool pass = o.pass && in_time;
    const std::string limit = c.limit_s > 0 ? " (limit " + fmt(c.limit_s) + " s)" : "";
    std::printf("criterion %2d %s%s: %s; %s; %.2f s%s\n", c.id, pass ? "PASS" : "FAIL",
                c.asserted ? "" : " (reported)", c.name, o.detail.c_str(), secs, limit.c_str());
    std::fflush(stdout);
    if (!pass && c.asserted) ++failed;
  }
  return failed == 0 ? 0 : 1;
}
