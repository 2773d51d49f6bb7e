#pragma once

#include <cstdint>
#include <string>

#include "tcw/ternary.hpp"

namespace tcw {

/// Runtime limits and output knobs. Core functions take the relevant caps as
/// explicit parameters; this struct is how the CLI and the test harness carry
/// one coherent set of them around.
struct Config {
  /// Cap for operations that walk all n! variable permutations of a full
  /// table (canonical forms, congruence checks).
  int table_arity_cap = kDefaultTableArityCap;

  /// Cap for materializing a full 3^n truth table.
  int witness_table_cap = kDefaultWitnessTableCap;

  /// Closure search: candidate applications examined before giving up.
  std::uint64_t bfs_node_budget = 1'000'000;

  /// Closure search: maximum nesting depth of built terms.
  int bfs_depth_cap = 4;

  std::string report_format = "text";  // "text" or "json"

  /// Seed for every randomized check; fixed default keeps runs reproducible.
  std::uint64_t seed = 0;
};

/// Throws std::invalid_argument if any field is out of its supported range.
void validate(const Config& config);

/// Reads a JSON object file and overlays its fields on the defaults. Every
/// key must be one of the Config field names; unknown keys are an error.
Config load_config_file(const std::string& path);

/// Defaults, overlaid with the file named by the TCW_CONFIG environment
/// variable when that is set.
Config load_config_from_env();

}  // namespace tcw
