#include "tcw/verify.hpp"

#include <chrono>
#include <functional>
#include <sstream>

#include "tcw/analysis.hpp"
#include "tcw/random.hpp"
#include "tcw/synthesis.hpp"

namespace tcw {

namespace {

using Clock = std::chrono::steady_clock;

struct Criterion {
  int id;
  Suite suite;
  std::string description;
  double time_limit_seconds;
  // Returns pass/fail and fills `details` with statistics or the failure.
  std::function<bool(const Config&, std::string&)> run;
};

std::string point_text(const TernaryTuple& t) {
  std::string s = "(";
  for (int i = 1; i <= t.arity(); ++i) {
    if (i > 1) s += ",";
    s += std::to_string(int(t.at(i)));
  }
  return s + ")";
}

/// Criterion 1: every admissible generator of arity 4..7 yields the
/// two-variable all-ones combiner exactly.
bool check_i2_construction(const Config&, std::string& details) {
  const TernaryFunction i2 = to_truth_table(SymmetricRFunction::all_of(2));
  int checked = 0;
  for (int n = 4; n <= 7; ++n) {
    for (int e = 1; e < n; ++e) {
      const ExcludedLayerFunction gen(n, e, n - e);
      const Witness w = synth_i2_from(gen);
      if (!(semantic_function(w.formula, 2) == i2)) {
        details = "mismatch for generator " + gen.name();
        return false;
      }
      if (!w.verified) {
        details = "witness for " + gen.name() + " was not swept";
        return false;
      }
      ++checked;
    }
  }
  details = std::to_string(checked) + " generators, 9 points each";
  return true;
}

/// Criterion 2: the size-doubling scheme instance (4,2,2) over (15,3,12).
bool check_unbounded_instance(const Config&, std::string& details) {
  const ExcludedLayerFunction target(4, 2, 2);
  const ExcludedLayerFunction generator(15, 3, 12);
  const Witness w = synth_family_unbounded(target, generator);
  if (!(semantic_function(w.formula, 4) == to_truth_table(target))) {
    details = "witness does not match " + target.name() + " on all 81 points";
    return false;
  }
  details = "all 81 points match; tree size " +
            std::to_string(tree_size(w.formula));
  return true;
}

bool check_pointed_core(const PointedTerm& core,
                        const TernaryTuple& expected_zero,
                        std::string& details) {
  if (!(core.zero_point == expected_zero)) {
    details = "core zero point is " + point_text(core.zero_point) +
              ", expected " + point_text(expected_zero);
    return false;
  }
  const int n = core.zero_point.arity();
  const CompiledFormula compiled(core.formula);
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    std::vector<Value> point(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
      point[static_cast<std::size_t>(i)] =
          (mask >> i) & 1 ? Value{2} : Value{1};
    }
    const TernaryTuple t{point};
    const bool is_zero = compiled.eval(t) == 0;
    const bool should_be = t == core.zero_point;
    if (is_zero != should_be) {
      details = "core value wrong at " + point_text(t);
      return false;
    }
  }
  return true;
}

/// Criteria 3 and 4: the fixed-layer-count schemes, including the shape of
/// the intermediate single-application term.
bool check_fixed_scheme(bool fixed_one_count, std::string& details) {
  const ExcludedLayerFunction target =
      fixed_one_count ? ExcludedLayerFunction(4, 1, 3)
                      : ExcludedLayerFunction(4, 3, 1);
  const ExcludedLayerFunction generator =
      fixed_one_count ? ExcludedLayerFunction(8, 1, 7)
                      : ExcludedLayerFunction(8, 7, 1);
  const PointedTerm core = fixed_one_count ? fixed_e_core(target, generator)
                                           : fixed_d_core(target, generator);
  const TernaryTuple expected_zero{fixed_one_count
                                       ? std::vector<Value>{1, 2, 2, 2}
                                       : std::vector<Value>{1, 1, 1, 2}};
  if (!check_pointed_core(core, expected_zero, details)) return false;
  const Witness w = fixed_one_count ? synth_family_fixed_e(target, generator)
                                    : synth_family_fixed_d(target, generator);
  if (!(semantic_function(w.formula, 4) == to_truth_table(target))) {
    details = "witness does not match " + target.name() + " on all 81 points";
    return false;
  }
  details = "81-point match; core vanishes exactly at " +
            point_text(expected_zero);
  return true;
}

/// Criterion 5: the full pipeline realizes every small two-valued
/// zero-propagating function over excluded-layer generators.
bool check_r_pipeline(const Config& config, std::string& details) {
  int checked = 0;
  auto check_one = [&](const TernaryFunction& f) -> bool {
    const Witness w = synth_R_from_Sminus1(f);
    if (!w.verified) return false;
    if (!(semantic_function(w.formula, f.arity()) == f)) return false;
    ++checked;
    return true;
  };
  // Arity 1: values at 1 and 2 free, 0 fixed; arity 2: the four positive
  // points free, zero elsewhere.
  for (int bits = 0; bits < 4; ++bits) {
    std::vector<Value> t(3, 0);
    t[1] = static_cast<Value>(bits & 1);
    t[2] = static_cast<Value>((bits >> 1) & 1);
    if (!check_one(TernaryFunction(1, std::move(t)))) {
      details = "arity-1 function #" + std::to_string(bits) + " failed";
      return false;
    }
  }
  for (int bits = 0; bits < 16; ++bits) {
    std::vector<Value> t(9, 0);
    int b = 0;
    for (std::uint64_t idx = 0; idx < 9; ++idx) {
      const TernaryTuple point = TernaryTuple::from_index(idx, 2);
      if (point.contains_zero()) continue;
      t[idx] = static_cast<Value>((bits >> b) & 1);
      ++b;
    }
    if (!check_one(TernaryFunction(2, std::move(t)))) {
      details = "arity-2 function #" + std::to_string(bits) + " failed";
      return false;
    }
  }
  Rng rng(config.seed);
  for (int k = 0; k < 50; ++k) {
    const TernaryFunction f = random_r_function(3, rng);
    if (!check_one(f)) {
      details = "random arity-3 function #" + std::to_string(k) + " failed";
      return false;
    }
  }
  details = std::to_string(checked) +
            " functions realized and swept on their full domains";
  return true;
}

/// Criterion 6: randomized closure-property check over 1000 formulas.
bool check_closure_properties(const Config& config, std::string& details) {
  const RClosureCheck check = verify_r_closed(1000, 5, 4, config.seed);
  std::ostringstream out;
  out << check.formulas_checked << " formulas, " << check.points_checked
      << " points, " << check.violations << " violations";
  if (!check.details.empty()) out << "; first: " << check.details.front();
  details = out.str();
  return check.violations == 0;
}

/// Criterion 7: no arity-4 one-missing-layer function arises from the
/// generators of arities 2 and 3. The search space outgrows any desk-scale
/// budget partway through depth 3 (measured: >3x10^8 candidates without
/// finishing it), so the exhaustive run uses depth 2 — the deepest level
/// completable within the stated budget — and a depth-4 run samples the
/// same budget's worth of candidates on top.
bool check_arity_bound_search(const Config& config, std::string& details) {
  std::vector<GeneratorPtr> gens;
  for (int n = 2; n <= 3; ++n) {
    for (const ExcludedLayerFunction& f : enumerate_s_minus_1(n)) {
      gens.push_back(make_generator(f));
    }
  }
  auto offenders = [](const ClosureIndex& index) {
    int count = 0;
    for (const ClosureEntry& e : index.entries) {
      if (e.classes.in_s_minus_1 && essential_arity(e.table) == 4) ++count;
    }
    return count;
  };
  ClosureLimits exhaustive;
  exhaustive.arity_cap = 4;
  exhaustive.depth_cap = 2;
  exhaustive.node_budget = config.bfs_node_budget;
  const ClosureIndex complete = closure_bfs(gens, exhaustive);

  ClosureLimits sampled = exhaustive;
  sampled.depth_cap = 4;
  const ClosureIndex deep = closure_bfs(gens, sampled);

  std::ostringstream out;
  out << "depth 2 exhaustive: " << complete.candidates_evaluated
      << " candidates, " << complete.entries.size() << " classes, "
      << (complete.truncated ? "truncated" : "complete")
      << ", offenders " << offenders(complete) << "; depth 4 sample: "
      << deep.candidates_evaluated << " candidates, offenders "
      << offenders(deep);
  details = out.str();
  return !complete.truncated && offenders(complete) == 0 &&
         offenders(deep) == 0;
}

/// Criterion 8: two-member basis extraction.
bool check_basis_finder(const Config&, std::string& details) {
  const BasisResult result = find_basis(
      {ExcludedLayerFunction(4, 1, 3), ExcludedLayerFunction(12, 1, 11)});
  if (result.basis.size() != 1 || result.basis[0].arity != 12 ||
      result.basis[0].e() != 1) {
    details = "basis is not exactly {s12_1_11}";
    return false;
  }
  if (result.removed.size() != 1 || !result.removed[0].witness.verified) {
    details = "expected one removal with a swept witness";
    return false;
  }
  if (result.negatives.size() != 1 ||
      result.negatives[0].kind != VerdictKind::Refuted) {
    details = "expected exactly one definitive negative";
    return false;
  }
  details = "basis {s12_1_11}; s4_1_3 removed with a verified witness; "
            "reverse direction refuted by the arity bound";
  return true;
}

/// Criterion 9: no-basis evidence for both unbounded families with the
/// smallest excluded count fixed to 1.
bool check_no_basis_evidence(const Config&, std::string& details) {
  for (const bool fixed_one : {true, false}) {
    const FamilySpec family =
        fixed_one ? FamilySpec::fixed_e(1) : FamilySpec::fixed_d(1);
    const NoBasisEvidence evidence = no_basis_evidence(family, 5);
    if (evidence.items.size() != 5 || !evidence.all_proven) {
      details = "evidence incomplete for " + family_text(family);
      for (const FamilyEvidence& item : evidence.items) {
        if (!item.proven) {
          details += "; " + item.member.name() + ": " +
                     (item.note.empty() ? "not proven" : item.note);
          break;
        }
      }
      return false;
    }
  }
  details = "both families: all 5 members generated by later members "
            "(verified witnesses), reverse direction refuted";
  return true;
}

/// Criterion 10: the small-application rewrite preserves semantics on a
/// corpus of wrapped arity-4 realizations.
bool check_small_application_rewrite(const Config&, std::string& details) {
  const GeneratorPtr s2a = make_generator(ExcludedLayerFunction(2, 1, 1));
  const GeneratorPtr s2b = make_generator(ExcludedLayerFunction(2, 0, 2));
  const GeneratorPtr s3a = make_generator(ExcludedLayerFunction(3, 1, 2));
  const GeneratorPtr s3b = make_generator(ExcludedLayerFunction(3, 0, 3));
  int checked = 0;
  for (int e = 0; e <= 4; ++e) {
    const ExcludedLayerFunction target(4, e, 4 - e);
    const GeneratorPtr g = make_generator(target);
    std::vector<FormulaPtr> vars;
    for (int i = 1; i <= 4; ++i) vars.push_back(Formula::var(i));
    const FormulaPtr psi = Formula::apply(g, vars);
    // Wrappers are identities on {0,1}-valued arguments, so each formula
    // still realizes the target while containing applications of arity < 4.
    const std::vector<FormulaPtr> corpus = {
        Formula::apply(s2a, {psi, psi}),
        Formula::apply(s2b, {psi, psi}),
        Formula::apply(s3a, {psi, psi, psi}),
        Formula::apply(s2a, {Formula::apply(s3b, {psi, psi, psi}),
                             Formula::apply(s3b, {psi, psi, psi})}),
    };
    for (const FormulaPtr& phi : corpus) {
      const TernaryFunction before = semantic_function(phi, 4);
      const FormulaPtr rewritten = replace_small_applications(phi, 4);
      if (!(semantic_function(rewritten, 4) == before)) {
        details = "semantics changed for a wrapper around " + target.name();
        return false;
      }
      if (rewritten == phi) {
        details = "no rewrite happened for a wrapper around " + target.name();
        return false;
      }
      ++checked;
    }
  }
  details = std::to_string(checked) +
            " formulas rewritten; all 81-point tables unchanged";
  return true;
}

const std::vector<Criterion>& catalogue() {
  static const std::vector<Criterion> kCriteria = {
      {1, Suite::Lemmas,
       "two-variable combiner from every admissible generator of arity 4-7",
       1.0, check_i2_construction},
      {2, Suite::Lemmas, "size-doubling scheme instance (4,2,2) over (15,3,12)",
       1.0, check_unbounded_instance},
      {3, Suite::Lemmas,
       "fixed-1-count scheme instance (4,1,3) over (8,1,7) with pointed core",
       1.0, [](const Config&, std::string& d) { return check_fixed_scheme(true, d); }},
      {4, Suite::Lemmas,
       "fixed-2-count scheme instance (4,3,1) over (8,7,1) with pointed core",
       1.0, [](const Config&, std::string& d) { return check_fixed_scheme(false, d); }},
      {5, Suite::Lemmas,
       "all small two-valued zero-propagating functions realized via the "
       "layer-set pipeline",
       10.0, check_r_pipeline},
      {6, Suite::Props,
       "random composition closure: values, zero-propagation, subterm "
       "inclusion",
       30.0, check_closure_properties},
      {7, Suite::Closure,
       "no arity-4 one-missing-layer function over generators of arities 2-3 "
       "(exhaustive to depth 2, sampled to depth 4)",
       120.0, check_arity_bound_search},
      {8, Suite::Lemmas, "basis extraction over {(4,1,3), (12,1,11)}", 1.0,
       check_basis_finder},
      {9, Suite::Lemmas,
       "family prefix members generated by later members they cannot "
       "generate back",
       5.0, check_no_basis_evidence},
      {10, Suite::Props,
       "small-application rewrite preserves the realized function", 5.0,
       check_small_application_rewrite},
  };
  return kCriteria;
}

}  // namespace

std::vector<CriterionResult> run_acceptance_suite(Suite suite,
                                                  const Config& config) {
  std::vector<CriterionResult> results;
  for (const Criterion& c : catalogue()) {
    if (suite != Suite::All && c.suite != suite) continue;
    CriterionResult r;
    r.id = c.id;
    r.description = c.description;
    const auto start = Clock::now();
    try {
      r.passed = c.run(config, r.details);
    } catch (const std::exception& e) {
      r.passed = false;
      r.details = std::string("exception: ") + e.what();
    }
    r.seconds = std::chrono::duration<double>(Clock::now() - start).count();
    if (r.passed && r.seconds > c.time_limit_seconds) {
      r.passed = false;
      r.details += "; exceeded the " + std::to_string(c.time_limit_seconds) +
                   " s budget";
    }
    results.push_back(std::move(r));
  }
  return results;
}

std::string format_results(const std::vector<CriterionResult>& results) {
  std::ostringstream out;
  for (const CriterionResult& r : results) {
    out << (r.passed ? "ok   " : "FAIL ") << r.id << " " << r.description;
    if (!r.details.empty()) out << ": " << r.details;
    out.setf(std::ios::fixed);
    out.precision(2);
    out << " (" << r.seconds << " s)\n";
  }
  return out.str();
}

bool all_passed(const std::vector<CriterionResult>& results) {
  for (const CriterionResult& r : results) {
    if (!r.passed) return false;
  }
  return true;
}

}  // namespace tcw
