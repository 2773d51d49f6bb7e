#include "tcw/report.hpp"

#include <map>
#include <sstream>
#include <stdexcept>
#include <utility>

#include "json.hpp"
#include "tcw/textio.hpp"

namespace tcw {

namespace {

using nlohmann::json;

std::string regime_name(CheckRegime regime) {
  switch (regime) {
    case CheckRegime::FullDomain: return "full-domain";
    case CheckRegime::PositiveGrid: return "positive-grid";
    case CheckRegime::None: break;
  }
  return "none";
}

std::string describe_generator(const GeneratorSymbol& g) {
  return g.name() + " = " + function_text(g.semantics());
}

json record_to_json_value(const WitnessRecord& r) {
  return json{{"target", r.target},
              {"generators", r.generators},
              {"formula", r.formula},
              {"formula_elided", r.formula_elided},
              {"tree_size", r.formula_tree_size},
              {"verified", r.verified},
              {"regime", r.regime},
              {"check_points", r.check_points},
              {"note", r.note}};
}

WitnessRecord record_from_json_value(const json& doc) {
  WitnessRecord r;
  r.target = doc.at("target").get<std::string>();
  r.generators = doc.at("generators").get<std::vector<std::string>>();
  r.formula = doc.at("formula").get<std::string>();
  r.formula_elided = doc.at("formula_elided").get<bool>();
  r.formula_tree_size = doc.at("tree_size").get<std::uint64_t>();
  r.verified = doc.at("verified").get<bool>();
  r.regime = doc.at("regime").get<std::string>();
  r.check_points = doc.at("check_points").get<std::uint64_t>();
  r.note = doc.at("note").get<std::string>();
  return r;
}

void append_witness_text(std::ostream& out, const WitnessRecord& r,
                         const std::string& indent) {
  out << indent << "target: " << r.target << "\n";
  for (const std::string& g : r.generators) {
    out << indent << "generator: " << g << "\n";
  }
  out << indent << "formula: " << r.formula << "\n";
  out << indent << "tree size: " << r.formula_tree_size << "\n";
  if (r.verified) {
    out << indent << "checked: " << r.regime << ", " << r.check_points
        << " points\n";
  } else {
    out << indent << "checked: no end-to-end sweep\n";
  }
  if (!r.note.empty()) out << indent << "note: " << r.note << "\n";
}

std::string impossibility_text(const ImpossibilityResult& r) {
  return std::string(r.proven ? "proven" : "not proven") + " — " + r.reason;
}

json impossibility_to_json(const ImpossibilityResult& r) {
  return json{{"proven", r.proven}, {"reason", r.reason}};
}

json verdict_to_json(const SynthVerdict& v, bool include_witness) {
  json doc{{"verdict", verdict_name(v.kind)}, {"reason", v.reason}};
  if (include_witness && v.witness.has_value()) {
    doc["witness"] = record_to_json_value(to_record(*v.witness));
  }
  return doc;
}

std::string table_digits(const TernaryFunction& f) {
  std::string s;
  s.reserve(f.table().size());
  for (Value v : f.table()) s.push_back(static_cast<char>('0' + v));
  return s;
}

}  // namespace

std::string verdict_name(VerdictKind kind) {
  switch (kind) {
    case VerdictKind::Proven: return "proven";
    case VerdictKind::Refuted: return "refuted";
    case VerdictKind::Unknown: break;
  }
  return "unknown";
}

WitnessRecord to_record(const Witness& w) {
  WitnessRecord r;
  r.target = function_text(w.target);
  for (const GeneratorPtr& g : w.generators_used) {
    r.generators.push_back(describe_generator(*g));
  }
  r.formula = print_formula(w.formula, kFormulaRenderCap);
  // print_formula falls back to a "<term with ...>" summary for oversized
  // terms; real S-expressions always start with '(' or a variable.
  r.formula_elided = !r.formula.empty() && r.formula.front() == '<';
  r.formula_tree_size = tree_size(w.formula);
  r.verified = w.verified;
  r.regime = regime_name(w.regime);
  r.check_points = w.check_points;
  r.note = w.note;
  return r;
}

GenerationReport to_report(const SynthVerdict& verdict) {
  GenerationReport report;
  report.verdict = verdict_name(verdict.kind);
  if (verdict.witness.has_value()) {
    report.witness = to_record(*verdict.witness);
  }
  report.reason = verdict.reason;
  return report;
}

std::string record_to_json(const WitnessRecord& record) {
  return record_to_json_value(record).dump(2);
}

WitnessRecord record_from_json(const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("witness record: ") + e.what());
  }
  try {
    return record_from_json_value(doc);
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("witness record: ") + e.what());
  }
}

std::string render_text(const GenerationReport& report) {
  std::ostringstream out;
  out << "verdict: " << report.verdict << "\n";
  if (report.witness.has_value()) {
    append_witness_text(out, *report.witness, "");
  }
  if (!report.reason.empty()) out << "reason: " << report.reason << "\n";
  return out.str();
}

std::string render_json(const GenerationReport& report) {
  json doc{{"verdict", report.verdict}, {"reason", report.reason}};
  doc["witness"] = report.witness.has_value()
                       ? record_to_json_value(*report.witness)
                       : json(nullptr);
  return doc.dump(2) + "\n";
}

std::string render_text(const BasisResult& result) {
  std::ostringstream out;
  out << "basis (" << result.basis.size() << "):\n";
  for (const auto& f : result.basis) {
    out << "  " << function_text(GeneratorSymbol::Semantics(f)) << "\n";
  }
  out << "removed (" << result.removed.size() << "):\n";
  for (const BasisRemoval& r : result.removed) {
    out << "  " << r.member.name() << ":\n";
    append_witness_text(out, to_record(r.witness), "    ");
  }
  out << "negatives (" << result.negatives.size() << "):\n";
  for (const BasisNegative& n : result.negatives) {
    out << "  " << n.target.name() << " over " << n.generator.name() << ": "
        << verdict_name(n.kind) << " — " << n.reason << "\n";
  }
  out << "irredundant: " << (result.irredundant_proven ? "proven" : "not proven")
      << "\n";
  for (const std::string& note : result.notes) out << "note: " << note << "\n";
  return out.str();
}

std::string render_json(const BasisResult& result) {
  json doc;
  doc["basis"] = json::array();
  for (const auto& f : result.basis) {
    doc["basis"].push_back(function_text(GeneratorSymbol::Semantics(f)));
  }
  doc["removed"] = json::array();
  for (const BasisRemoval& r : result.removed) {
    doc["removed"].push_back(
        json{{"member", function_text(GeneratorSymbol::Semantics(r.member))},
             {"witness", record_to_json_value(to_record(r.witness))}});
  }
  doc["negatives"] = json::array();
  for (const BasisNegative& n : result.negatives) {
    doc["negatives"].push_back(
        json{{"target", function_text(GeneratorSymbol::Semantics(n.target))},
             {"generator",
              function_text(GeneratorSymbol::Semantics(n.generator))},
             {"verdict", verdict_name(n.kind)},
             {"reason", n.reason}});
  }
  doc["irredundant_proven"] = result.irredundant_proven;
  doc["notes"] = result.notes;
  return doc.dump(2) + "\n";
}

std::string render_text(const NoBasisEvidence& evidence) {
  std::ostringstream out;
  out << "family: " << family_text(evidence.family) << "\n";
  for (const FamilyEvidence& item : evidence.items) {
    out << item.member.name() << ":";
    if (item.later_member.has_value()) {
      out << " generated by " << item.later_member->name() << " ["
          << (item.generated_from_later->verified ? "verified"
                                                  : "not swept")
          << "]; cannot generate it back: "
          << impossibility_text(item.cannot_generate_later);
      out << (item.proven ? " (proven)" : " (incomplete)") << "\n";
      append_witness_text(out, to_record(*item.generated_from_later), "  ");
    } else {
      out << " no generating later member found\n";
    }
    if (!item.note.empty()) out << "  note: " << item.note << "\n";
  }
  out << "all proven: " << (evidence.all_proven ? "yes" : "no") << "\n";
  out << "conclusion: " << evidence.conclusion << "\n";
  return out.str();
}

std::string render_json(const NoBasisEvidence& evidence) {
  json doc;
  doc["family"] = family_text(evidence.family);
  doc["items"] = json::array();
  for (const FamilyEvidence& item : evidence.items) {
    json entry;
    entry["member"] = function_text(GeneratorSymbol::Semantics(item.member));
    entry["later_member"] =
        item.later_member.has_value()
            ? json(function_text(GeneratorSymbol::Semantics(*item.later_member)))
            : json(nullptr);
    entry["witness"] = item.generated_from_later.has_value()
                           ? record_to_json_value(
                                 to_record(*item.generated_from_later))
                           : json(nullptr);
    entry["obstruction"] = impossibility_to_json(item.cannot_generate_later);
    entry["proven"] = item.proven;
    entry["note"] = item.note;
    doc["items"].push_back(std::move(entry));
  }
  doc["all_proven"] = evidence.all_proven;
  doc["conclusion"] = evidence.conclusion;
  return doc.dump(2) + "\n";
}

std::string render_text(const MutualGenerationReport& report) {
  std::ostringstream out;
  out << "members:";
  for (const auto& f : report.members) out << " " << f.name();
  out << "\n";
  for (std::size_t i = 0; i < report.members.size(); ++i) {
    out << report.members[i].name() << " over:";
    for (std::size_t j = 0; j < report.members.size(); ++j) {
      out << " " << report.members[j].name() << "="
          << verdict_name(report.matrix[i][j].kind);
    }
    out << "\n";
  }
  out << "all off-diagonal proven: "
      << (report.all_off_diagonal_proven ? "yes" : "no") << "\n";
  return out.str();
}

std::string render_json(const MutualGenerationReport& report) {
  json doc;
  doc["members"] = json::array();
  for (const auto& f : report.members) {
    doc["members"].push_back(function_text(GeneratorSymbol::Semantics(f)));
  }
  doc["matrix"] = json::array();
  for (const auto& row : report.matrix) {
    json jrow = json::array();
    for (const SynthVerdict& v : row) {
      jrow.push_back(verdict_to_json(v, /*include_witness=*/false));
    }
    doc["matrix"].push_back(std::move(jrow));
  }
  doc["all_off_diagonal_proven"] = report.all_off_diagonal_proven;
  return doc.dump(2) + "\n";
}

std::string render_text(const ClosureIndex& index) {
  std::ostringstream out;
  out << "closure index: arity cap " << index.arity_cap << ", "
      << index.entries.size() << " function classes, pool " << index.pool_size
      << " tables, " << index.candidates_evaluated << " candidates, "
      << (index.truncated ? "truncated" : "complete") << "\n";
  std::map<int, int> by_depth;
  int one_missing = 0;
  for (const ClosureEntry& e : index.entries) {
    ++by_depth[e.depth];
    if (e.classes.in_s_minus_1) ++one_missing;
  }
  out << "classes by depth:";
  for (const auto& [depth, count] : by_depth) {
    out << " " << depth << ":" << count;
  }
  out << "\n";
  out << "one-missing-layer classes: " << one_missing << "\n";
  return out.str();
}

std::string render_json(const ClosureIndex& index) {
  json doc;
  doc["arity_cap"] = index.arity_cap;
  doc["pool_size"] = index.pool_size;
  doc["candidates_evaluated"] = index.candidates_evaluated;
  doc["truncated"] = index.truncated;
  doc["entries"] = json::array();
  for (const ClosureEntry& e : index.entries) {
    doc["entries"].push_back(json{{"depth", e.depth},
                                  {"table", table_digits(e.table)},
                                  {"essential_arity", essential_arity(e.table)},
                                  {"in_r", e.classes.in_r},
                                  {"in_s", e.classes.in_s},
                                  {"in_s_minus_1", e.classes.in_s_minus_1}});
  }
  return doc.dump(2) + "\n";
}

std::string render_text(const RClosureCheck& check) {
  std::ostringstream out;
  out << "formulas: " << check.formulas_checked
      << ", points: " << check.points_checked
      << ", violations: " << check.violations << "\n";
  for (const std::string& d : check.details) out << "  " << d << "\n";
  return out.str();
}

std::string render_json(const RClosureCheck& check) {
  json doc{{"formulas_checked", check.formulas_checked},
           {"points_checked", check.points_checked},
           {"violations", check.violations},
           {"details", check.details}};
  return doc.dump(2) + "\n";
}

}  // namespace tcw
