#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "subsetspace/flow.hpp"
#include "subsetspace/paths.hpp"
#include "subsetspace/relations.hpp"

namespace subsetspace::io {

using Json = nlohmann::ordered_json;

/// {"p": number | "inf", "epsilon": number, "dim": integer}; missing keys
/// keep the values from `fallback`.
NormDescriptor parse_norm(const Json& j, const NormDescriptor& fallback = {});
Json to_json(const NormDescriptor& nd);

Json to_json(const Point& p);
Json to_json(const FiniteSubset& x);
Json to_json(const CompleteRelation& r);
/// Parses [[c0, c1, ...], ...]; on the line a bare number is a point.
FiniteSubset parse_subset(const Json& j, const NormDescriptor& nd);

struct SubsetsFile {
  NormDescriptor norm;
  std::vector<FiniteSubset> subsets;
};

/// {"norm": {...}, "subsets": [subset, ...]} or a bare list of subsets.
SubsetsFile parse_subsets(const Json& j, const NormDescriptor& fallback);
/// Same, from text. Malformed JSON raises invalid-input with the parser's
/// byte position.
SubsetsFile parse_subsets_text(const std::string& text, const NormDescriptor& fallback);
Json parse_json_text(const std::string& text);

/// JSON text with every floating-point number printed at 17 significant
/// digits, so equal values always serialize identically.
std::string dump(const Json& j, int indent = 2);

/// Rows "t,c..,c..": one row per sample, coordinates of every point
/// flattened in canonical order.
void write_path_csv(std::ostream& os, const SubsetPath& path, std::size_t grid);
/// Header time,point_0_coord_0,...; one row per trajectory sample.
void write_flow_csv(std::ostream& os, const FlowResult& r);

std::string format_double(double v);

}  // namespace subsetspace::io
