#include <string>

#include "doctest.h"
#include "json.hpp"
#include "tcw/report.hpp"

using namespace tcw;
using nlohmann::json;

namespace {

Witness small_witness() {
  return make_verified_witness(
      GeneratorSymbol::Semantics(ExcludedLayerFunction(2, 1, 1)),
      Formula::apply(make_generator(ExcludedLayerFunction(2, 1, 1)),
                     {Formula::var(1), Formula::var(2)}));
}

}  // namespace

TEST_CASE("witness records survive a JSON round trip") {
  const WitnessRecord record = to_record(small_witness());
  CHECK(record.target == "sminus1 n=2 e=1 d=1");
  const WitnessRecord back = record_from_json(record_to_json(record));
  CHECK(back.target == record.target);
  CHECK(back.generators == record.generators);
  CHECK(back.formula == record.formula);
  CHECK(back.formula_elided == record.formula_elided);
  CHECK(back.formula_tree_size == record.formula_tree_size);
  CHECK(back.verified == record.verified);
  CHECK(back.regime == record.regime);
  CHECK(back.check_points == record.check_points);
  CHECK(back.note == record.note);
}

TEST_CASE("records carry the printable formula or an elision summary") {
  const WitnessRecord record = to_record(small_witness());
  CHECK(record.formula == "(s2_1_1 x1 x2)");
  CHECK(!record.formula_elided);
  CHECK(record.formula_tree_size == 3);
  CHECK(record.regime == "full-domain");
  CHECK(record.check_points == 9);

  // A witness whose printed form exceeds the cap is summarized, and the
  // record says so instead of silently truncating.
  const SynthVerdict big = synth_from_generator({4, 1, 3}, {8, 1, 7});
  REQUIRE(big.witness.has_value());
  const WitnessRecord wide = to_record(*big.witness);
  CHECK(wide.formula_elided);
  CHECK(wide.formula.find("positions") != std::string::npos);
}

TEST_CASE("verdict names are the three stable strings") {
  CHECK(verdict_name(VerdictKind::Proven) == "proven");
  CHECK(verdict_name(VerdictKind::Refuted) == "refuted");
  CHECK(verdict_name(VerdictKind::Unknown) == "unknown");
}

TEST_CASE("generation reports render in both formats with the same content") {
  const SynthVerdict verdict = synth_from_generator({4, 1, 3}, {8, 1, 7});
  const GenerationReport report = to_report(verdict);
  const std::string text = render_text(report);
  CHECK(text.find("verdict: proven") != std::string::npos);
  CHECK(text.find("s8_1_7") != std::string::npos);

  const json doc = json::parse(render_json(report));
  CHECK(doc.at("verdict") == "proven");
  CHECK(doc.at("witness").at("verified") == true);
  CHECK(doc.at("witness").at("target") == "sminus1 n=4 e=1 d=3");
}

TEST_CASE("refuted reports carry the reason in both formats") {
  const SynthVerdict verdict = synth_from_generator({12, 1, 11}, {4, 1, 3});
  const GenerationReport report = to_report(verdict);
  CHECK(render_text(report).find("refuted") != std::string::npos);
  const json doc = json::parse(render_json(report));
  CHECK(doc.at("verdict") == "refuted");
  CHECK(!doc.at("reason").get<std::string>().empty());
  CHECK(doc.at("witness").is_null());
}

TEST_CASE("basis results render their components") {
  const BasisResult result = find_basis({{4, 1, 3}, {12, 1, 11}});
  const std::string text = render_text(result);
  CHECK(text.find("basis (1):") != std::string::npos);
  CHECK(text.find("s12_1_11") != std::string::npos);
  CHECK(text.find("irredundant: proven") != std::string::npos);

  const json doc = json::parse(render_json(result));
  CHECK(doc.at("basis").size() == 1);
  CHECK(doc.at("removed").size() == 1);
  CHECK(doc.at("negatives").size() == 1);
  CHECK(doc.at("irredundant_proven") == true);
}

TEST_CASE("family evidence renders the two-sided argument per member") {
  const NoBasisEvidence evidence = no_basis_evidence(FamilySpec::fixed_e(1), 2);
  const std::string text = render_text(evidence);
  CHECK(text.find("s4_1_3") != std::string::npos);
  CHECK(text.find("all proven: yes") != std::string::npos);

  const json doc = json::parse(render_json(evidence));
  CHECK(doc.at("items").size() == 2);
  CHECK(doc.at("all_proven") == true);
  CHECK(doc.at("items")[0].contains("witness"));
  CHECK(doc.at("items")[0].at("obstruction").at("proven") == true);
}

TEST_CASE("mutual generation matrices render as verdict grids") {
  const MutualGenerationReport report =
      family_mutual_generation(FamilySpec::list({Layer{1, 1}, Layer{1, 3}}), 2);
  const std::string text = render_text(report);
  CHECK(text.find("s2_1_1") != std::string::npos);
  CHECK(text.find("refuted") != std::string::npos);

  const json doc = json::parse(render_json(report));
  CHECK(doc.at("members").size() == 2);
  CHECK(doc.at("matrix").size() == 2);
  CHECK(doc.at("matrix")[1][0].at("verdict") == "refuted");
  CHECK(doc.at("all_off_diagonal_proven") == false);
}

TEST_CASE("closure indexes and randomized checks render summaries") {
  const ClosureIndex index = closure_bfs(
      {make_generator(ExcludedLayerFunction(2, 1, 1))},
      {.arity_cap = 2, .depth_cap = 2});
  const json doc = json::parse(render_json(index));
  CHECK(doc.at("arity_cap") == 2);
  CHECK(doc.at("truncated") == false);
  CHECK(doc.at("entries").size() == index.entries.size());
  CHECK(render_text(index).find("function classes") != std::string::npos);

  const RClosureCheck check = verify_r_closed(10, 3, 3, 5);
  const json check_doc = json::parse(render_json(check));
  CHECK(check_doc.at("violations") == 0);
  CHECK(render_text(check).find("violations") != std::string::npos);
}
