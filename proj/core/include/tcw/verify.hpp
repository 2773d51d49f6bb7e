#pragma once

#include <string>
#include <vector>

#include "tcw/config.hpp"

/// The acceptance gate: ten numbered end-to-end checks covering the
/// construction lemmas, the whole-class pipelines, the randomized closure
/// properties, and the bounded closure search. Each check reports pass/fail
/// with timing; the CLI and the test suite both run them through here.
namespace tcw {

enum class Suite {
  Props,    // randomized property checks (6, 10)
  Lemmas,   // construction and basis checks (1-5, 8, 9)
  Closure,  // bounded closure search (7)
  All,
};

struct CriterionResult {
  int id = 0;
  std::string description;
  bool passed = false;
  std::string details;  // key statistics, or what failed
  double seconds = 0.0;
};

/// Runs the selected checks in id order. config.seed feeds the randomized
/// checks; config.bfs_node_budget bounds the closure search.
std::vector<CriterionResult> run_acceptance_suite(Suite suite,
                                                  const Config& config);

/// One line per result: "ok 3 fixed-1-count instance ... (0.01 s)" or
/// "FAIL 7 ...: <details>".
std::string format_results(const std::vector<CriterionResult>& results);

/// True when every result passed.
bool all_passed(const std::vector<CriterionResult>& results);

}  // namespace tcw
