#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tcw/formula.hpp"

/// Constructive realizations: given generators from the excluded-layer
/// catalogue, build formulas realizing requested functions, together with a
/// machine-checked record of what was verified.
///
/// Every synthesized result is wrapped in a Witness. Small-arity witnesses
/// are checked on the full domain E3^n; larger ones on all of {1,2}^n, which
/// extends to the full domain because every generator used maps any input
/// containing 0 to 0 and the formula uses all n variables, so both the target
/// and the formula vanish wherever a component is 0. Witnesses whose sweep
/// would be too large to run are returned unverified with an explanatory
/// note rather than silently trusted.
namespace tcw {

/// How a witness equality "formula == target" was checked.
enum class CheckRegime {
  None,          // not checked end-to-end (see Witness::note)
  FullDomain,    // all 3^n points
  PositiveGrid,  // all 2^n points of {1,2}^n; zeros covered structurally
};

struct Witness {
  explicit Witness(GeneratorSymbol::Semantics target_in)
      : target(std::move(target_in)) {}

  GeneratorSymbol::Semantics target;
  std::vector<GeneratorPtr> generators_used;  // distinct, by name
  FormulaPtr formula;
  bool verified = false;
  CheckRegime regime = CheckRegime::None;
  std::uint64_t check_points = 0;
  std::string note;  // non-empty when unverified or worth explaining
};

/// Upper bound on evaluation work (formula nodes x points) a verification
/// sweep may spend before the witness is returned unverified with a note.
inline constexpr std::uint64_t kDefaultSweepOpsBudget = 400'000'000;

/// Wraps a formula as a Witness for the target, choosing the widest
/// affordable check regime. Throws std::logic_error if a sweep finds a
/// mismatch: synthesized constructions are expected to be exact.
Witness make_verified_witness(GeneratorSymbol::Semantics target,
                              FormulaPtr formula,
                              int full_sweep_cap = kDefaultTableArityCap,
                              std::uint64_t sweep_ops_budget =
                                  kDefaultSweepOpsBudget);

/// The two-variable all-ones combiner realized from one excluded-layer
/// generator with n > 3 and both layer counts positive: one application of
/// the generator to copies of x1 and x2, with the copy counts chosen per the
/// shape of the excluded layer so no point of {1,2}^2 can hit it.
Witness synth_i2_from(const ExcludedLayerFunction& generator);

/// The s-variable all-ones combiner: a right-nested chain
/// i2(x1, i2(x2, ... i2(x_{s-1}, x_s))), with i2 realized from the given
/// generator; s = 1 uses i2(x1, x1). Chains are shared bottom-up, so the
/// term has O(s) distinct nodes even though its expanded tree does not.
Witness synth_is(int s, const ExcludedLayerFunction& generator);

/// A single application of a symmetric generator to repeated variables,
/// whose restriction to {1,2}^n is 1 everywhere except one designated zero
/// point. The three family schemes below produce these; symmetrize() turns
/// them into fully symmetric realizations.
struct PointedTerm {
  FormulaPtr formula;     // generator applied per multiplicities (+ padding)
  TernaryTuple zero_point;  // the unique zero on {1,2}^n
  GeneratorPtr generator;
  std::vector<int> multiplicities;  // argument copies of x1..xn
  int padding_count = 0;   // leading copies of padding_term applied to x1
  FormulaPtr padding_term;  // arity-1 term evaluating to 1 on {1,2}; or null
};

/// Joins all distinct variable-permuted copies of the core under an
/// all-ones combiner built from the same generator. The result is symmetric
/// and, on {1,2}^n, is 0 exactly on the layer of the core's zero point.
/// Throws when the number of distinct copies exceeds copy_cap.
FormulaPtr symmetrize(const PointedTerm& core,
                      std::uint64_t copy_cap = 1'000'000);

/// Same excluded 1-count on both sides (e >= 1): requires the generator's
/// 2-count to exceed (e+1) times the target's. The core applies the
/// generator to x1..xe once each, e+1 copies of each middle variable, and
/// the remaining copies of xn; its unique zero is (1^e, 2^{n-e}).
PointedTerm fixed_e_core(const ExcludedLayerFunction& target,
                         const ExcludedLayerFunction& generator);

/// Mirror scheme: same excluded 2-count d on both sides (d >= 1), generator
/// 1-count exceeding (d+1) times the target's. Unique zero (1^{e}, 2^d).
PointedTerm fixed_d_core(const ExcludedLayerFunction& target,
                         const ExcludedLayerFunction& generator);

/// Size-doubling scheme relating arbitrary excluded layers: requires
/// generator counts e_g >= 2^{e} - 1 and d_g >= 2^{e} (2^{d} - 1) for a
/// target with excluded layer (e, d). The core pads with copies of an
/// arity-1 all-ones term and gives variable j a count of 2^{j-1}, making the
/// zero condition a binary decomposition with the unique solution
/// (1^e, 2^d).
PointedTerm unbounded_core(const ExcludedLayerFunction& target,
                           const ExcludedLayerFunction& generator);

Witness synth_family_fixed_e(const ExcludedLayerFunction& target,
                             const ExcludedLayerFunction& generator);
Witness synth_family_fixed_d(const ExcludedLayerFunction& target,
                             const ExcludedLayerFunction& generator);
Witness synth_family_unbounded(const ExcludedLayerFunction& target,
                               const ExcludedLayerFunction& generator);

/// The excluded-layer generator used when a construction needs an arbitrary
/// member to build the all-ones combiners from.
ExcludedLayerFunction canonical_combiner_source();

/// Realizes a symmetric two-valued zero-propagating target over the
/// excluded-layer catalogue: one arity-n excluded-layer generator per zero
/// layer of the target, joined under an all-ones combiner built from
/// canonical_combiner_source().
Witness synth_S_from_Sminus1(const SymmetricRFunction& target);

/// Realizes an arbitrary two-valued zero-propagating target of arity n as a
/// single application of a symmetric generator of arity 2^n - 1: variable j
/// is passed 2^{j-1} times, so the argument's 1-count encodes the input
/// point, and the generator's 1-layers are chosen accordingly. Throws if the
/// target takes a value outside {0,1} or is nonzero somewhere a component
/// is 0.
Witness synth_R_from_S(const TernaryFunction& target);

/// Composition of synth_R_from_S with synth_S_from_Sminus1: the final term
/// uses excluded-layer generators only.
Witness synth_R_from_Sminus1(const TernaryFunction& target);

enum class VerdictKind { Proven, Refuted, Unknown };

struct SynthVerdict {
  VerdictKind kind = VerdictKind::Unknown;
  std::optional<Witness> witness;  // present iff Proven
  std::string reason;              // why Refuted / what blocked Proven
};

/// Attempts to realize one excluded-layer target from one excluded-layer
/// generator, trying, in order: identity, the aligned e = 0 / d = 0 direct
/// identifications, the fixed-1-count scheme, the fixed-2-count scheme, the
/// size-doubling scheme, and finally a bounded search over argument
/// multiplicity patterns. Refuted is returned only on one of the two
/// definitive obstructions: a target arity above the generator arity (for
/// targets of arity > 3), or a target that must vanish at the all-ones
/// point, where every term over this generator evaluates to 1.
SynthVerdict synth_from_generator(const ExcludedLayerFunction& target,
                                  const ExcludedLayerFunction& generator);

}  // namespace tcw
