#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "subsetspace/norms.hpp"

namespace subsetspace::cli {

inline const std::vector<std::string> kOperations = {
    "hausdorff", "retract2",       "retract3",    "retractN1",    "retractN2", "flow",
    "geodesic",  "quasiconvex-path", "estimate-lip", "check-holder", "fixtures"};

struct ExperimentConfig {
  NormDescriptor norm{};
  std::string operation;
  std::string input_path;
  /// Inline JSON, same format as an input file.
  std::string sets;
  std::string output_path;
  std::string csv_path;
  std::uint64_t seed = 0;
  double tol = kDefaultTolerance;
  double tau = 7.0;
  double merge_tol = 0.0;
  double rk_tol = 1e-9;
  std::size_t max_steps = 1000000;
  std::string map;
  std::string sampler = "mixed";
  std::string fixture;
  std::size_t trials = 1000;
  std::size_t n = 0;
  std::size_t grid = 101;
  double m = 5.0;
};

/// Option-level checks (tau > 6, p >= 1, trials >= 1, ...). Throws
/// invalid-input.
void validate(const ExperimentConfig& config);

/// Runs one operation. Exit status 0 on success, 2 on validation errors,
/// 3 on numerical failure; diagnostics and bound checks go to `err`.
int run(const ExperimentConfig& config, std::ostream& out, std::ostream& err);

/// Parses argv (flags, --config JSON overrides, SUBSETSPACE_SEED fallback)
/// and runs.
int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace subsetspace::cli
