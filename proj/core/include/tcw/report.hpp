#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "tcw/analysis.hpp"
#include "tcw/synthesis.hpp"

/// Presentation layer: flattens witnesses and analysis results into plain
/// records and renders them as human-readable text or JSON documents. The
/// JSON layout is part of the tool's external contract and is kept stable.
namespace tcw {

struct WitnessRecord {
  std::string target;                   // descriptor line of the target
  std::vector<std::string> generators;  // name + descriptor, name order
  std::string formula;                  // S-expression, possibly elided
  bool formula_elided = false;
  std::uint64_t formula_tree_size = 0;  // fully expanded term size
  bool verified = false;
  std::string regime;  // "full-domain" | "positive-grid" | "none"
  std::uint64_t check_points = 0;
  std::string note;
};

/// Character budget above which a witness formula is summarized instead of
/// printed in full.
inline constexpr std::size_t kFormulaRenderCap = 1 << 16;

WitnessRecord to_record(const Witness& w);

std::string verdict_name(VerdictKind kind);

struct GenerationReport {
  std::string verdict;  // "proven" | "refuted" | "unknown"
  std::optional<WitnessRecord> witness;
  std::string reason;
};

GenerationReport to_report(const SynthVerdict& verdict);

/// JSON round-trip for witness records (used by the machine-readable
/// output and its tests).
std::string record_to_json(const WitnessRecord& record);
WitnessRecord record_from_json(const std::string& json_text);

std::string render_text(const GenerationReport& report);
std::string render_json(const GenerationReport& report);

std::string render_text(const BasisResult& result);
std::string render_json(const BasisResult& result);

std::string render_text(const NoBasisEvidence& evidence);
std::string render_json(const NoBasisEvidence& evidence);

std::string render_text(const MutualGenerationReport& report);
std::string render_json(const MutualGenerationReport& report);

std::string render_text(const ClosureIndex& index);
std::string render_json(const ClosureIndex& index);

std::string render_text(const RClosureCheck& check);
std::string render_json(const RClosureCheck& check);

}  // namespace tcw
