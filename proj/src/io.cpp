#include "subsetspace/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <sstream>

#include "subsetspace/error.hpp"

namespace subsetspace::io {

std::string format_double(double v) {
  if (std::isnan(v)) return "NaN";
  if (std::isinf(v)) return v > 0 ? "Infinity" : "-Infinity";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace {

double number_or_inf(const Json& j, const char* key) {
  if (j.is_string() && (j == "inf" || j == "infinity" || j == "Infinity")) return kInf;
  if (j.is_number()) return j.get<double>();
  throw Error(ErrorCode::InvalidInput, std::string("norm field '") + key + "' must be a number");
}

void emit(std::ostringstream& os, const Json& j, int indent, int depth) {
  const auto pad = [&](int d) {
    if (indent > 0) os << '\n' << std::string(static_cast<std::size_t>(indent * d), ' ');
  };
  switch (j.type()) {
    case Json::value_t::number_float:
      if (std::isfinite(j.get<double>()))
        os << format_double(j.get<double>());
      else
        os << Json(format_double(j.get<double>())).dump();
      break;
    case Json::value_t::array: {
      if (j.empty()) {
        os << "[]";
        break;
      }
      // Arrays of scalars stay on one line.
      const bool flat = std::none_of(j.begin(), j.end(), [](const Json& e) {
        return e.is_structured();
      });
      os << '[';
      bool first = true;
      for (const Json& e : j) {
        if (!first) os << (flat && indent > 0 ? ", " : ",");
        first = false;
        if (!flat) pad(depth + 1);
        emit(os, e, indent, depth + 1);
      }
      if (!flat) pad(depth);
      os << ']';
      break;
    }
    case Json::value_t::object: {
      if (j.empty()) {
        os << "{}";
        break;
      }
      os << '{';
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) os << ',';
        first = false;
        pad(depth + 1);
        os << Json(it.key()).dump() << (indent > 0 ? ": " : ":");
        emit(os, it.value(), indent, depth + 1);
      }
      pad(depth);
      os << '}';
      break;
    }
    default:
      os << j.dump();
  }
}

}  // namespace

NormDescriptor parse_norm(const Json& j, const NormDescriptor& fallback) {
  if (!j.is_object()) throw Error(ErrorCode::InvalidInput, "norm must be an object");
  double p = fallback.p, eps = fallback.epsilon;
  int dim = fallback.dim;
  if (j.contains("p")) p = number_or_inf(j["p"], "p");
  if (j.contains("epsilon")) eps = number_or_inf(j["epsilon"], "epsilon");
  if (j.contains("dim")) {
    if (!j["dim"].is_number_integer()) throw Error(ErrorCode::InvalidInput, "dim must be an integer");
    dim = j["dim"].get<int>();
  }
  return NormDescriptor::make(p, eps, dim);
}

Json to_json(const NormDescriptor& nd) {
  Json j;
  if (std::isinf(nd.p))
    j["p"] = "inf";
  else
    j["p"] = nd.p;
  j["epsilon"] = nd.epsilon;
  j["dim"] = nd.dim;
  return j;
}

Json to_json(const Point& p) {
  Json j = Json::array();
  for (double c : p.coords()) j.push_back(c);
  return j;
}

Json to_json(const FiniteSubset& x) {
  Json j = Json::array();
  for (const Point& p : x) j.push_back(to_json(p));
  return j;
}

Json to_json(const CompleteRelation& r) {
  Json pairs = Json::array();
  for (const auto& [a, b] : r.pairs()) pairs.push_back(Json::array({a, b}));
  Json j;
  j["left"] = to_json(r.left());
  j["right"] = to_json(r.right());
  j["pairs"] = std::move(pairs);
  return j;
}

FiniteSubset parse_subset(const Json& j, const NormDescriptor& nd) {
  if (!j.is_array() || j.empty())
    throw Error(ErrorCode::InvalidInput, "a subset must be a nonempty array of points");
  std::vector<std::vector<double>> coords;
  for (const Json& p : j) {
    if (p.is_number()) {
      coords.push_back({p.get<double>()});
      continue;
    }
    if (!p.is_array()) throw Error(ErrorCode::InvalidInput, "a point must be an array of numbers");
    std::vector<double> c;
    for (const Json& v : p) {
      if (!v.is_number()) throw Error(ErrorCode::InvalidInput, "coordinates must be numbers");
      c.push_back(v.get<double>());
    }
    coords.push_back(std::move(c));
  }
  return FiniteSubset::from_coords(nd, coords);
}

SubsetsFile parse_subsets(const Json& j, const NormDescriptor& fallback) {
  SubsetsFile out{fallback, {}};
  const Json* list = &j;
  if (j.is_object()) {
    if (j.contains("norm")) out.norm = parse_norm(j["norm"], fallback);
    if (!j.contains("subsets")) throw Error(ErrorCode::InvalidInput, "missing 'subsets'");
    list = &j["subsets"];
  }
  if (!list->is_array()) throw Error(ErrorCode::InvalidInput, "'subsets' must be an array");
  for (const Json& s : *list) out.subsets.push_back(parse_subset(s, out.norm));
  return out;
}

Json parse_json_text(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::InvalidInput,
                "malformed JSON at byte " + std::to_string(e.byte) + ": " + e.what());
  }
}

SubsetsFile parse_subsets_text(const std::string& text, const NormDescriptor& fallback) {
  return parse_subsets(parse_json_text(text), fallback);
}

std::string dump(const Json& j, int indent) {
  std::ostringstream os;
  emit(os, j, indent, 0);
  return os.str();
}

void write_path_csv(std::ostream& os, const SubsetPath& path, std::size_t grid) {
  if (grid < 2) throw Error(ErrorCode::InvalidInput, "grid must have at least 2 points");
  os << "t,coords\n";
  for (std::size_t i = 0; i < grid; ++i) {
    const double t = i + 1 == grid ? 1.0 : static_cast<double>(i) / static_cast<double>(grid - 1);
    os << format_double(t);
    for (const Point& p : path.sample(t))
      for (double c : p.coords()) os << ',' << format_double(c);
    os << '\n';
  }
}

void write_flow_csv(std::ostream& os, const FlowResult& r) {
  if (r.trajectory.empty()) return;
  const Configuration& first = r.trajectory.front().config;
  os << "time";
  for (std::size_t i = 0; i < first.size(); ++i)
    for (std::size_t k = 0; k < first[i].dim(); ++k) os << ",point_" << i << "_coord_" << k;
  os << '\n';
  for (const FlowSample& s : r.trajectory) {
    os << format_double(s.time);
    for (const Point& p : s.config)
      for (double c : p.coords()) os << ',' << format_double(c);
    os << '\n';
  }
}

}  // namespace subsetspace::io
