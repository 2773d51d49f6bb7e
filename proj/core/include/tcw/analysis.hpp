#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tcw/synthesis.hpp"
#include "tcw/textio.hpp"

/// Whole-class questions: bounded closure search, basis extraction over
/// finite generator sets, structured evidence that the unbounded families
/// admit no finite basis, and randomized checks of the closure properties
/// the synthesis layer relies on.
namespace tcw {

struct ClosureLimits {
  int arity_cap = 4;    // functions are tracked as tables over x1..x_cap
  int depth_cap = 4;    // maximum nesting depth of built terms
  std::uint64_t node_budget = 1'000'000;  // candidate applications examined
};

struct ClosureEntry {
  TernaryFunction table;      // raw table over x1..x_arity_cap
  TernaryFunction canonical;  // minimum over variable permutations
  FormulaPtr formula;         // first term found realizing the table
  int depth = 0;
  Classification classes;
};

struct ClosureIndex {
  int arity_cap = 0;
  std::vector<ClosureEntry> entries;  // discovery order; applications only
  bool truncated = false;             // node budget ran out mid-search
  std::uint64_t candidates_evaluated = 0;
  std::uint64_t pool_size = 0;  // distinct raw tables incl. projections

  /// Entry congruent to f (up to variable renaming, after extending f with
  /// unused variables to the index arity), or nullptr.
  const ClosureEntry* find_congruent(const TernaryFunction& f) const;
};

/// Breadth-first closure of the generators under composition, seeded with
/// the projections x1..x_arity_cap. Terms are deduplicated by their raw
/// table; the entry list additionally collapses congruent tables, keeping
/// the first representative. Deterministic: generators are processed in name
/// order and argument tuples in index order (nondecreasing tuples for
/// symmetric generators, since argument order cannot matter for them).
ClosureIndex closure_bfs(const std::vector<GeneratorPtr>& generators,
                         const ClosureLimits& limits);

/// Replaces every application of a generator of arity below the threshold
/// with the all-ones symmetric combiner of that arity applied to the same
/// arguments. In terms realizing an excluded-layer target of arity >=
/// threshold, such small applications can never hit their excluded layer in
/// a way the root observes, so the rewrite preserves the realized function.
FormulaPtr replace_small_applications(const FormulaPtr& phi,
                                      int arity_threshold);

struct ImpossibilityResult {
  bool proven = false;
  std::string reason;
};

/// The definitive arity obstruction: an excluded-layer target of arity n > 3
/// cannot be realized over generators that all have arity below n.
ImpossibilityResult arity_impossibility(const ExcludedLayerFunction& target,
                                        int max_generator_arity);

struct ReductionAttempt {
  ExcludedLayerFunction candidate;
  bool success = false;
  std::vector<ExcludedLayerFunction> targets;  // the other members
  std::vector<SynthVerdict> verdicts;          // aligned with targets
};

struct ReductionResult {
  std::optional<ExcludedLayerFunction> generator;  // first working candidate
  std::vector<Witness> witnesses;  // one per other member, on success
  std::vector<ReductionAttempt> attempts;  // every candidate tried, in order
};

/// Looks for a single member generating all the others, trying candidates
/// by ascending arity (then ascending excluded 1-count).
ReductionResult reduce_to_single_generator(
    const std::vector<ExcludedLayerFunction>& members);

struct BasisRemoval {
  ExcludedLayerFunction member;
  Witness witness;  // realization over a surviving basis member
};

struct BasisNegative {
  ExcludedLayerFunction target;     // surviving basis member
  ExcludedLayerFunction generator;  // candidate that cannot produce it
  VerdictKind kind = VerdictKind::Unknown;  // Refuted or Unknown
  std::string reason;
};

struct BasisResult {
  std::vector<ExcludedLayerFunction> basis;  // descending arity
  std::vector<BasisRemoval> removed;
  std::vector<BasisNegative> negatives;  // survivors vs. other members
  bool irredundant_proven = false;  // pairwise refuted among survivors
  std::vector<std::string> notes;   // anomalies worth surfacing
};

/// Removes members generatable from the rest until a fixpoint, recording a
/// witness per removal and the non-generation verdicts that keep the
/// survivors in. All pairwise generation verdicts are computed up front, so
/// the result does not depend on elimination order.
BasisResult find_basis(const std::vector<ExcludedLayerFunction>& members);

struct FamilyEvidence {
  ExcludedLayerFunction member;
  // Smallest later family member found to generate `member`, with the
  // witness; absent when the bounded search over later members found none.
  std::optional<ExcludedLayerFunction> later_member;
  std::optional<Witness> generated_from_later;
  ImpossibilityResult cannot_generate_later;  // member -> later_member
  bool proven = false;  // witness proven & verified, obstruction proven
  std::string note;
};

struct NoBasisEvidence {
  FamilySpec family;
  std::vector<FamilyEvidence> items;  // one per prefix member
  bool all_proven = false;
  std::string conclusion;
};

/// For each of the first prefix_length members of an unbounded family:
/// a witness that some later member generates it, and the arity obstruction
/// showing it cannot generate that later member back. Together these show
/// every finite subset of the family fails to generate the members above its
/// largest arity, i.e. the family's closure has no finite basis inside the
/// family.
NoBasisEvidence no_basis_evidence(const FamilySpec& family, int prefix_length);

struct MutualGenerationReport {
  std::vector<ExcludedLayerFunction> members;
  /// matrix[i][j]: verdict for realizing members[i] over members[j].
  std::vector<std::vector<SynthVerdict>> matrix;
  bool all_off_diagonal_proven = false;
};

/// Pairwise generation verdicts among the first `count` members of a family.
MutualGenerationReport family_mutual_generation(const FamilySpec& family,
                                                int count);

struct RClosureCheck {
  std::uint64_t formulas_checked = 0;
  std::uint64_t points_checked = 0;
  std::uint64_t violations = 0;
  std::vector<std::string> details;  // one line per violation (capped)
};

/// Randomized check that composition preserves the two-valued
/// zero-propagating class: builds random terms over random generators from
/// the class and verifies, at every input point, that the term's value stays
/// in {0,1}, vanishes whenever a component is 0, vanishes whenever any
/// subterm vanishes, and has all application subterms equal to 1 whenever
/// the term itself is 1.
RClosureCheck verify_r_closed(int formula_count, int max_arity, int max_depth,
                              std::uint64_t seed);

}  // namespace tcw
