#pragma once

#include <string>
#include <vector>

/// The tcw command line, separated from main() so tests can drive it
/// in-process. Exit codes are a stable contract:
///   0  proven / succeeded
///   1  usage, parse, or configuration error
///   2  definitive negative (refuted, failed verification)
///   3  unknown (no proof and no refutation within the implemented methods)
namespace tcw {

struct CommandResult {
  int exit_code = 0;
  std::string out;
  std::string err;
};

/// Runs one subcommand. args excludes the program name, e.g.
/// {"synth", "target.fn", "--via", "sminus1"}.
CommandResult run_command(const std::vector<std::string>& args);

std::string usage_text();

}  // namespace tcw
