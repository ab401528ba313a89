#include "subsetspace/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "subsetspace/error.hpp"
#include "subsetspace/flow.hpp"
#include "subsetspace/io.hpp"
#include "subsetspace/paths.hpp"
#include "subsetspace/retract.hpp"
#include "subsetspace/verify.hpp"

namespace subsetspace::cli {

namespace {

using io::Json;

constexpr double kMarginSlack = 1e-9;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::InvalidInput, "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

double parse_p(const std::string& s) {
  if (s == "inf" || s == "infinity" || s == "Infinity") return kInf;
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used == s.size()) return v;
  } catch (const std::exception&) {
  }
  throw Error(ErrorCode::InvalidInput, "--p expects a number or 'inf', got '" + s + "'");
}

io::SubsetsFile load_sets(const ExperimentConfig& c) {
  if (!c.sets.empty()) return io::parse_subsets_text(c.sets, c.norm);
  if (!c.input_path.empty()) return io::parse_subsets_text(read_file(c.input_path), c.norm);
  throw Error(ErrorCode::InvalidInput, "no input: pass --input FILE or --sets JSON");
}

const FiniteSubset& nth(const io::SubsetsFile& f, std::size_t i, const char* op) {
  if (f.subsets.size() <= i)
    throw Error(ErrorCode::InvalidInput, std::string(op) + " needs " + std::to_string(i + 1) +
                                             " input subsets");
  return f.subsets[i];
}

void write_artifact(const ExperimentConfig& c, const Json& j, std::ostream& out) {
  const std::string text = io::dump(j) + "\n";
  if (c.output_path.empty()) {
    out << text;
    return;
  }
  std::ofstream f(c.output_path, std::ios::binary);
  if (!f) throw Error(ErrorCode::InvalidInput, "cannot write '" + c.output_path + "'");
  f << text;
}

std::ofstream open_csv(const std::string& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error(ErrorCode::InvalidInput, "cannot write '" + path + "'");
  return f;
}

FlowOptions flow_options(const ExperimentConfig& c, std::size_t n) {
  FlowOptions o;
  o.n = n;
  o.merge_tol = c.merge_tol;
  o.rk_tol = c.rk_tol;
  o.max_steps = c.max_steps;
  return o;
}

struct NamedMap {
  SubsetMap map;
  std::size_t max_points;
  BreakpointFamily family;
};

NamedMap resolve_map(const ExperimentConfig& c, const std::string& name) {
  const std::size_t n = c.n;
  if (name == "identity")
    return {[](const FiniteSubset& x) { return x; }, n ? n : 4, BreakpointFamily::ThreePoint};
  if (name == "retract2") return {retract_pair_average, 2, BreakpointFamily::ThreePoint};
  if (name == "retract3") return {retract_3_to_2, 3, BreakpointFamily::ThreePoint};
  if (name == "retractN1") return {retract_n_to_1, n ? n : 4, BreakpointFamily::Skeleton};
  if (name == "retractN2") {
    const double tau = c.tau;
    return {[tau](const FiniteSubset& x) { return retract_n_to_2(x, tau); }, n ? n : 4,
            BreakpointFamily::Skeleton};
  }
  if (name == "diameter")
    return {[](const FiniteSubset& x) {
              return FiniteSubset(NormDescriptor{}, {Point(NormDescriptor{}, {diameter(x)})});
            },
            n ? n : 4, BreakpointFamily::ThreePoint};
  if (name == "flow") {
    const std::size_t fn = n ? n : 3;
    const FlowOptions o = [&] {
      FlowOptions f = flow_options(c, fn);
      f.record_trajectory = false;
      return f;
    }();
    return {[o](const FiniteSubset& x) { return flow_retract(x, o).output; }, fn,
            BreakpointFamily::ThreePoint};
  }
  throw Error(ErrorCode::InvalidInput, "unknown map '" + name + "'");
}

SamplerKind parse_sampler(const std::string& s) {
  for (SamplerKind k : {SamplerKind::Uniform, SamplerKind::NearCollision, SamplerKind::Breakpoint,
                        SamplerKind::Mixed})
    if (to_string(k) == s) return k;
  throw Error(ErrorCode::InvalidInput, "unknown sampler '" + s + "'");
}

SamplerSpec sampler_for(const ExperimentConfig& c, const NamedMap& m) {
  SamplerSpec s;
  s.kind = parse_sampler(c.sampler);
  s.norm = c.norm;
  s.min_points = 1;
  s.max_points = m.max_points;
  s.family = m.family;
  s.tau = c.tau;
  return s;
}

Json p_json(double p) { return std::isinf(p) ? Json("inf") : Json(p); }

Json pair_json(const std::optional<SubsetPair>& pair) {
  if (!pair) return nullptr;
  return Json::array({io::to_json(pair->first), io::to_json(pair->second)});
}

Json op_hausdorff(const ExperimentConfig& c, const io::SubsetsFile& f) {
  const FiniteSubset& x = nth(f, 0, "hausdorff");
  const FiniteSubset& y = nth(f, 1, "hausdorff");
  Json j;
  j["operation"] = c.operation;
  j["norm"] = io::to_json(f.norm);
  j["hausdorff"] = hausdorff(x, y);
  return j;
}

Json op_retract(const ExperimentConfig& c, const io::SubsetsFile& f) {
  Json outputs = Json::array();
  for (const FiniteSubset& x : f.subsets) {
    if (c.operation == "retract2")
      outputs.push_back(io::to_json(retract_pair_average(x)));
    else if (c.operation == "retract3")
      outputs.push_back(io::to_json(retract_3_to_2(x)));
    else if (c.operation == "retractN1")
      outputs.push_back(io::to_json(retract_n_to_1(x)));
    else
      outputs.push_back(io::to_json(retract_n_to_2(x, c.tau)));
  }
  Json j;
  j["operation"] = c.operation;
  j["norm"] = io::to_json(f.norm);
  if (c.operation == "retractN2") j["tau"] = c.tau;
  j["outputs"] = std::move(outputs);
  return j;
}

Json op_flow(const ExperimentConfig& c, const io::SubsetsFile& f, std::ostream& err) {
  const FiniteSubset& x = nth(f, 0, "flow");
  const std::size_t n = c.n ? c.n : x.size();
  const FlowResult r = flow_retract(x, flow_options(c, n));
  Json j;
  j["collision_time"] = r.collision_time;
  j["output"] = io::to_json(r.output);
  j["merge_tolerance"] = r.merge_tolerance;
  j["steps"] = r.steps;
  if (x.size() == n) {
    const double delta = total_min_separation(x);
    const double lo = delta / (2.0 * static_cast<double>(n - 1));
    const double hi = delta / 2.0;
    const double slack = 1e-6 * delta;
    const bool bracket = r.collision_time >= lo - slack && r.collision_time <= hi + slack;
    const double disp = hausdorff(x, r.output);
    const double disp_bound = 0.5 * static_cast<double>(n - 1) * delta;
    const bool disp_ok = disp <= disp_bound + slack;
    Json b;
    b["lower"] = lo;
    b["upper"] = hi;
    b["collision_time_in_bracket"] = bracket;
    b["displacement"] = disp;
    b["displacement_bound"] = disp_bound;
    b["displacement_ok"] = disp_ok;
    j["bounds_check"] = std::move(b);
    err << "collision-time bracket [" << io::format_double(lo) << ", " << io::format_double(hi)
        << "]: " << (bracket ? "PASS" : "FAIL") << " (T = " << io::format_double(r.collision_time)
        << ")\n";
    err << "displacement bound " << io::format_double(disp_bound) << ": "
        << (disp_ok ? "PASS" : "FAIL") << '\n';
  } else {
    err << "input lies in a lower stratum; returned unchanged\n";
  }
  if (!c.csv_path.empty()) {
    std::ofstream csv = open_csv(c.csv_path);
    io::write_flow_csv(csv, r);
  }
  return j;
}

Json op_path(const ExperimentConfig& c, const io::SubsetsFile& f, std::ostream& err) {
  const FiniteSubset& x = nth(f, 0, c.operation.c_str());
  const FiniteSubset& y = nth(f, 1, c.operation.c_str());
  const bool qc = c.operation == "quasiconvex-path";
  const SubsetPath path = qc ? two_quasiconvex_path(x, y) : geodesic_in_larger_stratum(x, y);
  const double dh = hausdorff(x, y);
  const std::size_t grid = std::max<std::size_t>(c.grid, 2);
  Json j;
  j["operation"] = c.operation;
  j["hausdorff"] = dh;
  j["cardinality_bound"] = path.cardinality_bound();
  j["legs"] = path.legs().size();
  j["length"] = path_length(path, grid);
  if (dh > 0.0) {
    const double speed = path_speed_profile(path, grid);
    const double lambda = qc ? 2.0 : 1.0;
    j["speed_profile"] = speed;
    err << "speed profile " << io::format_double(speed) << " <= " << lambda << ": "
        << (speed <= lambda + 1e-6 ? "PASS" : "FAIL") << '\n';
  }
  Json samples = Json::array();
  for (std::size_t i = 0; i < grid; ++i) {
    const double t = i + 1 == grid ? 1.0 : static_cast<double>(i) / static_cast<double>(grid - 1);
    Json s;
    s["t"] = t;
    s["set"] = io::to_json(path.sample(t));
    samples.push_back(std::move(s));
  }
  j["samples"] = std::move(samples);
  if (!c.csv_path.empty()) {
    std::ofstream csv = open_csv(c.csv_path);
    io::write_path_csv(csv, path, grid);
  }
  return j;
}

Json op_estimate(const ExperimentConfig& c) {
  const std::string name = c.map.empty() ? "retract2" : c.map;
  const NamedMap m = resolve_map(c, name);
  const SamplerSpec s = sampler_for(c, m);
  const LipschitzEstimate e = estimate_lipschitz(name, m.map, s, c.trials, c.seed, c.tol);
  Json j;
  j["map"] = name;
  j["n"] = m.max_points;
  j["p"] = p_json(c.norm.p);
  j["trials"] = e.trials;
  j["used"] = e.used;
  j["max_ratio"] = e.max_ratio;
  j["argmax"] = pair_json(e.argmax);
  j["seed"] = e.seed;
  j["sampler"] = to_string(s.kind);
  return j;
}

Json op_holder(const ExperimentConfig& c, std::ostream& err) {
  const std::string name = c.map.empty() ? "flow" : c.map;
  ExperimentConfig cc = c;
  if (cc.n == 0) cc.n = 3;
  const NamedMap m = resolve_map(cc, name);
  const SamplerSpec s = sampler_for(cc, m);
  const HolderReport r = check_holder(m.map, cc.n, s, c.trials, c.seed);
  Json j;
  j["map"] = name;
  j["n"] = cc.n;
  j["p"] = p_json(c.norm.p);
  j["trials"] = r.trials;
  j["worst_margin"] = r.worst_margin;
  j["argmin"] = pair_json(r.argmin);
  j["seed"] = c.seed;
  j["sampler"] = to_string(s.kind);
  err << "Hoelder margin " << io::format_double(r.worst_margin) << ": "
      << (r.worst_margin >= -kMarginSlack ? "PASS" : "FAIL") << '\n';
  return j;
}

Json op_fixtures(const ExperimentConfig& c, std::ostream& err) {
  Json j;
  const bool all = c.fixture.empty();
  if (!all && c.fixture != "spaced-pair" && c.fixture != "bip-hexagon")
    throw Error(ErrorCode::InvalidInput, "unknown fixture '" + c.fixture + "'");
  if (all || c.fixture == "spaced-pair") {
    const std::size_t n = c.n ? c.n : 4;
    const auto [x, y] = spaced_pair(n, c.m);
    const double dh = hausdorff(x, y);
    const double obstruction = spaced_pair_obstruction(x, y, n, std::max<std::size_t>(c.trials, 1), c.seed);
    Json s;
    s["n"] = n;
    s["m"] = c.m;
    s["x"] = io::to_json(x);
    s["y"] = io::to_json(y);
    s["hausdorff"] = dh;
    s["min_midpoint_excess"] = obstruction;
    j["spaced_pair"] = std::move(s);
    err << "spaced pair obstruction " << io::format_double(obstruction) << " >= "
        << io::format_double(dh) << ": " << (obstruction >= dh - 1e-9 ? "PASS" : "FAIL") << '\n';
  }
  if (all || c.fixture == "bip-hexagon") {
    const BipHexagon h = bip_hexagon();
    const BipCheck chk = verify_bip_hexagon(h, std::max<std::size_t>(c.grid, 401));
    Json b;
    b["x"] = io::to_json(h.x);
    b["y"] = io::to_json(h.y);
    b["z"] = io::to_json(h.z);
    b["radius"] = h.radius;
    b["max_pairwise_hausdorff"] = chk.max_pairwise;
    b["pairwise_intersect"] = chk.pairwise_intersect;
    b["common_point_found"] = chk.common_point_found;
    b["grid"] = chk.grid;
    j["bip_hexagon"] = std::move(b);
    err << "BIP hexagon: pairwise " << (chk.pairwise_intersect ? "PASS" : "FAIL")
        << ", triple intersection empty " << (!chk.common_point_found ? "PASS" : "FAIL") << '\n';
  }
  return j;
}

std::size_t json_count(const Json& v, const char* key) {
  if (!v.is_number_integer() || v.get<long long>() < 0)
    throw Error(ErrorCode::InvalidInput, std::string("config '") + key + "' must be a nonnegative integer");
  return v.get<std::size_t>();
}

double json_number(const Json& v, const char* key) {
  if (v.is_string()) return parse_p(v.get<std::string>());
  if (!v.is_number())
    throw Error(ErrorCode::InvalidInput, std::string("config '") + key + "' must be a number");
  return v.get<double>();
}

std::string json_string(const Json& v, const char* key) {
  if (!v.is_string())
    throw Error(ErrorCode::InvalidInput, std::string("config '") + key + "' must be a string");
  return v.get<std::string>();
}

/// Keys in a --config file override the corresponding flags.
void apply_config(ExperimentConfig& c, const Json& j, double& p, double& eps, int& dim) {
  if (!j.is_object()) throw Error(ErrorCode::InvalidInput, "config must be a JSON object");
  for (auto it = j.begin(); it != j.end(); ++it) {
    const std::string& k = it.key();
    const Json& v = it.value();
    if (k == "p") p = json_number(v, "p");
    else if (k == "epsilon") eps = json_number(v, "epsilon");
    else if (k == "dim") dim = static_cast<int>(json_count(v, "dim"));
    else if (k == "norm") {
      const NormDescriptor nd = io::parse_norm(v, NormDescriptor{p, eps, dim});
      p = nd.p;
      eps = nd.epsilon;
      dim = nd.dim;
    }
    else if (k == "seed") c.seed = json_count(v, "seed");
    else if (k == "tol") c.tol = json_number(v, "tol");
    else if (k == "tau") c.tau = json_number(v, "tau");
    else if (k == "merge_tol") c.merge_tol = json_number(v, "merge_tol");
    else if (k == "rk_tol") c.rk_tol = json_number(v, "rk_tol");
    else if (k == "max_steps") c.max_steps = json_count(v, "max_steps");
    else if (k == "map") c.map = json_string(v, "map");
    else if (k == "sampler") c.sampler = json_string(v, "sampler");
    else if (k == "fixture") c.fixture = json_string(v, "fixture");
    else if (k == "trials") c.trials = json_count(v, "trials");
    else if (k == "n") c.n = json_count(v, "n");
    else if (k == "grid") c.grid = json_count(v, "grid");
    else if (k == "m") c.m = json_number(v, "m");
    else if (k == "input") c.input_path = json_string(v, "input");
    else if (k == "sets") c.sets = v.is_string() ? v.get<std::string>() : v.dump();
    else if (k == "output") c.output_path = json_string(v, "output");
    else if (k == "csv") c.csv_path = json_string(v, "csv");
    else throw Error(ErrorCode::InvalidInput, "unknown config key '" + k + "'");
  }
}

}  // namespace

void validate(const ExperimentConfig& c) {
  if (std::find(kOperations.begin(), kOperations.end(), c.operation) == kOperations.end())
    throw Error(ErrorCode::InvalidInput, "unknown operation '" + c.operation + "'");
  NormDescriptor::make(c.norm.p, c.norm.epsilon, c.norm.dim);
  if (!(c.tau > 6.0) || !std::isfinite(c.tau))
    throw Error(ErrorCode::InvalidInput, "tau must be > 6");
  if (c.trials < 1) throw Error(ErrorCode::InvalidInput, "trials must be >= 1");
  if (c.grid < 2) throw Error(ErrorCode::InvalidInput, "grid must be >= 2");
  if (!(c.rk_tol > 0.0)) throw Error(ErrorCode::InvalidInput, "rk-tol must be positive");
  if (c.merge_tol < 0.0) throw Error(ErrorCode::InvalidInput, "merge-tol must be >= 0");
  if (!(c.tol >= 0.0)) throw Error(ErrorCode::InvalidInput, "tol must be >= 0");
  if (c.max_steps < 1) throw Error(ErrorCode::InvalidInput, "max-steps must be >= 1");
}

int run(const ExperimentConfig& config, std::ostream& out, std::ostream& err) {
  try {
    validate(config);
    const std::string& op = config.operation;
    Json result;
    if (op == "estimate-lip") {
      result = op_estimate(config);
    } else if (op == "check-holder") {
      result = op_holder(config, err);
    } else if (op == "fixtures") {
      result = op_fixtures(config, err);
    } else {
      const io::SubsetsFile f = load_sets(config);
      if (op == "hausdorff")
        result = op_hausdorff(config, f);
      else if (op == "flow")
        result = op_flow(config, f, err);
      else if (op == "geodesic" || op == "quasiconvex-path")
        result = op_path(config, f, err);
      else
        result = op_retract(config, f);
    }
    write_artifact(config, result, out);
    return 0;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return e.is_numerical() ? 3 : 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 3;
  }
}

int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Finite subset spaces: retractions, collision flows, paths and estimators",
               "subsetspace"};
  app.fallthrough();
  app.require_subcommand(1);

  ExperimentConfig c;
  std::string p_text = "2";
  double eps = 1.0;
  int dim = 1;
  std::string config_path;
  std::uint64_t seed = 0;

  app.add_option("--p", p_text, "norm exponent (number >= 1 or 'inf')");
  app.add_option("--epsilon", eps, "snowflake exponent in (0, 1]");
  app.add_option("--dim", dim, "ambient dimension");
  CLI::Option* seed_opt = app.add_option("--seed", seed, "RNG seed (falls back to SUBSETSPACE_SEED)");
  app.add_option("--tol", c.tol, "degeneracy tolerance");
  app.add_option("--config", config_path, "JSON file whose keys override the flags");
  app.add_option("--input", c.input_path, "JSON subsets file");
  app.add_option("--sets", c.sets, "inline JSON subsets");
  app.add_option("--output", c.output_path, "JSON artifact path (default: stdout)");
  app.add_option("--csv", c.csv_path, "CSV artifact path (flow and path operations)");
  app.add_option("--tau", c.tau, "skeleton parameter (> 6)");
  app.add_option("--merge-tol", c.merge_tol, "flow stopping/merge threshold (0: 1e-6 delta)");
  app.add_option("--rk-tol", c.rk_tol, "integrator relative tolerance");
  app.add_option("--max-steps", c.max_steps, "integrator step limit");
  app.add_option("--map", c.map, "identity|retract2|retract3|retractN1|retractN2|flow|diameter");
  app.add_option("--sampler", c.sampler, "uniform|near-collision|breakpoint|mixed");
  app.add_option("--fixture", c.fixture, "spaced-pair|bip-hexagon (default: both)");
  app.add_option("--trials", c.trials, "number of sampled pairs");
  app.add_option("--n", c.n, "stratum / cardinality bound");
  app.add_option("--grid", c.grid, "grid points for path sampling");
  app.add_option("--m", c.m, "spaced-pair spacing (> 3)");
  for (const std::string& op : kOperations) app.add_subcommand(op, "run " + op);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }

  try {
    c.operation = app.get_subcommands().front()->get_name();
    if (seed_opt->count() > 0) {
      c.seed = seed;
    } else if (const char* env = std::getenv("SUBSETSPACE_SEED")) {
      try {
        c.seed = std::stoull(env);
      } catch (const std::exception&) {
        throw Error(ErrorCode::InvalidInput, "SUBSETSPACE_SEED is not an integer");
      }
    }
    double p = parse_p(p_text);
    if (!config_path.empty()) apply_config(c, io::parse_json_text(read_file(config_path)), p, eps, dim);
    c.norm = NormDescriptor::make(p, eps, dim);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
  return run(c, out, err);
}

}  // namespace subsetspace::cli
