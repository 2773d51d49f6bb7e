#include "tcw/analysis.hpp"

#include <algorithm>
#include <cstddef>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <variant>

#include "tcw/random.hpp"

namespace tcw {

namespace {

std::string table_key(const std::vector<Value>& table) {
  return std::string(table.begin(), table.end());
}

bool generator_is_symmetric(const GeneratorSymbol& g) {
  if (const auto* t = std::get_if<TernaryFunction>(&g.semantics())) {
    return is_symmetric(*t);
  }
  return true;  // excluded-layer and layer-set functions by construction
}

bool generator_is_one_missing_layer(const GeneratorSymbol& g) {
  if (std::holds_alternative<ExcludedLayerFunction>(g.semantics())) {
    return true;
  }
  if (const auto* s = std::get_if<SymmetricRFunction>(&g.semantics())) {
    // arity + 1 layers total; exactly one must be missing from the 1-set.
    return static_cast<int>(s->one_layers.size()) == s->arity;
  }
  return classify(std::get<TernaryFunction>(g.semantics())).in_s_minus_1;
}

/// Bottom-up rebuild over the distinct subterms of phi. `rebuild` receives
/// each application's symbol and already-rewritten arguments and returns the
/// replacement term; unchanged nodes are shared, not copied. Iterative
/// post-order: a marker entry is popped only after every argument pushed
/// above it has been resolved, so shared subterms are ready regardless of
/// how many parents reference them.
template <typename Rebuild>
FormulaPtr rewrite_applications(const FormulaPtr& phi, Rebuild&& rebuild) {
  if (phi->is_var()) return phi;
  std::unordered_map<const Formula*, FormulaPtr> done;
  std::vector<std::pair<FormulaPtr, bool>> stack;
  stack.emplace_back(phi, false);
  while (!stack.empty()) {
    auto [node, expand] = stack.back();
    stack.pop_back();
    if (!expand) {
      if (done.count(node.get()) != 0) continue;
      stack.emplace_back(node, true);
      for (const FormulaPtr& a : node->args()) {
        if (!a->is_var() && done.count(a.get()) == 0) {
          stack.emplace_back(a, false);
        }
      }
      continue;
    }
    std::vector<FormulaPtr> args;
    args.reserve(node->args().size());
    bool changed = false;
    for (const FormulaPtr& a : node->args()) {
      if (a->is_var()) {
        args.push_back(a);
        continue;
      }
      const FormulaPtr& r = done.at(a.get());
      if (r != a) changed = true;
      args.push_back(r);
    }
    done.emplace(node.get(),
                 rebuild(node->symbol(), std::move(args), changed, node));
  }
  return done.at(phi.get());
}

/// Replaces every application of the named generator by `body` with that
/// application's (rewritten) arguments substituted for x1, x2, ...
FormulaPtr replace_generator_applications(const FormulaPtr& phi,
                                          const std::string& name,
                                          const FormulaPtr& body) {
  return rewrite_applications(
      phi, [&](const GeneratorPtr& symbol, std::vector<FormulaPtr> args,
               bool changed, const FormulaPtr& original) -> FormulaPtr {
        if (symbol->name() == name) {
          return substitute(body, args);
        }
        return changed ? Formula::apply(symbol, std::move(args)) : original;
      });
}

}  // namespace

const ClosureEntry* ClosureIndex::find_congruent(
    const TernaryFunction& f) const {
  if (f.arity() > arity_cap) return nullptr;
  const std::uint64_t small = pow3(f.arity());
  std::vector<Value> ext(pow3(arity_cap));
  for (std::uint64_t idx = 0; idx < ext.size(); ++idx) {
    ext[idx] = f.value_at_index(idx % small);  // unused variables on top
  }
  const TernaryFunction canon =
      canonical_table(TernaryFunction(arity_cap, std::move(ext)), arity_cap);
  for (const ClosureEntry& entry : entries) {
    if (entry.canonical == canon) return &entry;
  }
  return nullptr;
}

ClosureIndex closure_bfs(const std::vector<GeneratorPtr>& generators,
                         const ClosureLimits& limits) {
  if (limits.arity_cap < 1 || limits.arity_cap > kDefaultTableArityCap) {
    throw std::invalid_argument("closure_bfs: arity_cap must be in 1.." +
                                std::to_string(kDefaultTableArityCap));
  }
  if (limits.depth_cap < 0) {
    throw std::invalid_argument("closure_bfs: depth_cap must be >= 0");
  }
  if (limits.node_budget < 1) {
    throw std::invalid_argument("closure_bfs: node_budget must be >= 1");
  }
  std::vector<GeneratorPtr> gens = generators;
  for (const GeneratorPtr& g : gens) {
    if (!g) throw std::invalid_argument("closure_bfs: null generator");
  }
  std::sort(gens.begin(), gens.end(),
            [](const GeneratorPtr& a, const GeneratorPtr& b) {
              return a->name() < b->name();
            });
  for (std::size_t i = 1; i < gens.size(); ++i) {
    if (gens[i]->name() == gens[i - 1]->name()) {
      if (!(*gens[i] == *gens[i - 1])) {
        throw std::invalid_argument(
            "closure_bfs: generators share the name '" + gens[i]->name() +
            "' with different semantics");
      }
      gens.erase(gens.begin() + static_cast<std::ptrdiff_t>(i));
      --i;
    }
  }

  ClosureIndex index;
  index.arity_cap = limits.arity_cap;
  const std::uint64_t n_points = pow3(limits.arity_cap);

  struct PoolItem {
    std::vector<Value> table;
    FormulaPtr formula;
  };
  std::vector<PoolItem> pool;
  std::unordered_set<std::string> seen_raw;
  std::unordered_set<std::string> seen_canonical;

  for (int i = 1; i <= limits.arity_cap; ++i) {
    std::vector<Value> t(n_points);
    const std::uint64_t shift = pow3(i - 1);
    for (std::uint64_t idx = 0; idx < n_points; ++idx) {
      t[idx] = static_cast<Value>((idx / shift) % 3);
    }
    seen_raw.insert(table_key(t));
    pool.push_back(PoolItem{std::move(t), Formula::var(i)});
  }

  // Entries with depth r are appended during round r, so "has an argument
  // from the previous round" is an index threshold, not a per-item flag.
  std::size_t level_begin = 0;
  bool out_of_budget = false;

  for (int round = 1; round <= limits.depth_cap && !out_of_budget; ++round) {
    const std::size_t prefix = pool.size();
    if (level_begin >= prefix) break;  // previous round added nothing

    for (const GeneratorPtr& gen : gens) {
      const int m = gen->arity();
      const bool symmetric = generator_is_symmetric(*gen);
      std::vector<std::size_t> p(static_cast<std::size_t>(m), 0);
      std::vector<Value> arg_values(static_cast<std::size_t>(m));
      // Every tuple must include at least one argument from the previous
      // round (index >= level_begin). For symmetric generators only
      // nondecreasing tuples are visited, so the last position is the
      // maximum and can be floored to level_begin directly.
      if (symmetric) {
        p.back() = level_begin;
      } else {
        bool all_old = true;
        for (std::size_t v : p) all_old &= v < level_begin;
        if (all_old) p.back() = level_begin;
      }

      for (;;) {
        if (index.candidates_evaluated >= limits.node_budget) {
          index.truncated = true;
          out_of_budget = true;
          break;
        }
        ++index.candidates_evaluated;

        std::vector<Value> result(n_points);
        for (std::uint64_t idx = 0; idx < n_points; ++idx) {
          for (int j = 0; j < m; ++j) {
            arg_values[static_cast<std::size_t>(j)] =
                pool[p[static_cast<std::size_t>(j)]].table[idx];
          }
          result[idx] = gen->eval_values(arg_values);
        }
        std::string key = table_key(result);
        if (seen_raw.insert(std::move(key)).second) {
          std::vector<FormulaPtr> args;
          args.reserve(static_cast<std::size_t>(m));
          for (int j = 0; j < m; ++j) {
            args.push_back(pool[p[static_cast<std::size_t>(j)]].formula);
          }
          FormulaPtr formula = Formula::apply(gen, std::move(args));
          TernaryFunction fn(limits.arity_cap, result);
          TernaryFunction canon = canonical_table(fn, limits.arity_cap);
          if (seen_canonical.insert(table_key(canon.table())).second) {
            index.entries.push_back(ClosureEntry{
                fn, std::move(canon), formula, round, classify(fn)});
          }
          pool.push_back(PoolItem{std::move(result), std::move(formula)});
        }

        // Advance to the next argument tuple over pool[0..prefix).
        if (symmetric) {
          int i = m - 1;
          while (i >= 0 && p[static_cast<std::size_t>(i)] + 1 >= prefix) --i;
          if (i < 0) break;
          const std::size_t v = ++p[static_cast<std::size_t>(i)];
          for (std::size_t j = static_cast<std::size_t>(i) + 1;
               j < p.size(); ++j) {
            p[j] = v;
          }
          if (p.back() < level_begin) p.back() = level_begin;
        } else {
          int i = m - 1;
          while (i >= 0) {
            if (++p[static_cast<std::size_t>(i)] < prefix) break;
            p[static_cast<std::size_t>(i)] = 0;
            --i;
          }
          if (i < 0) break;
          bool all_old = true;
          for (std::size_t v : p) all_old &= v < level_begin;
          if (all_old) p.back() = level_begin;
        }
      }
      if (out_of_budget) break;
    }
    level_begin = prefix;
  }

  index.pool_size = pool.size();
  return index;
}

FormulaPtr replace_small_applications(const FormulaPtr& phi,
                                      int arity_threshold) {
  if (!phi) {
    throw std::invalid_argument("replace_small_applications: null formula");
  }
  if (arity_threshold < 1) {
    throw std::invalid_argument(
        "replace_small_applications: arity threshold must be >= 1");
  }
  for (const GeneratorPtr& g : generators_of(phi)) {
    if (!generator_is_one_missing_layer(*g)) {
      throw std::invalid_argument(
          "replace_small_applications: generator '" + g->name() +
          "' is not a one-missing-layer function, so the rewrite rule does "
          "not apply");
    }
  }
  // The rewrite hypothesis is about the function the whole term realizes
  // over its own variables, which must be one-missing-layer of arity at
  // least the threshold; smaller supports fail the classification below.
  const int realized_arity = std::max(max_var_index(phi), arity_threshold);
  const TernaryFunction before = semantic_function(phi, realized_arity);
  if (!classify(before).in_s_minus_1) {
    throw std::invalid_argument(
        "replace_small_applications: the formula does not realize a "
        "one-missing-layer function of arity at least the threshold");
  }

  std::map<int, GeneratorPtr> combiners;
  FormulaPtr result = rewrite_applications(
      phi, [&](const GeneratorPtr& symbol, std::vector<FormulaPtr> args,
               bool changed, const FormulaPtr& original) -> FormulaPtr {
        const int m = symbol->arity();
        if (m < arity_threshold) {
          GeneratorPtr& comb = combiners[m];
          if (!comb) comb = make_generator(SymmetricRFunction::all_of(m));
          return Formula::apply(comb, std::move(args));
        }
        return changed ? Formula::apply(symbol, std::move(args)) : original;
      });

  const TernaryFunction after = semantic_function(result, realized_arity);
  if (!(after == before)) {
    throw std::runtime_error(
        "replace_small_applications: the rewrite changed the realized "
        "function, so the input violated the rewrite's hypotheses");
  }
  return result;
}

ImpossibilityResult arity_impossibility(const ExcludedLayerFunction& target,
                                        int max_generator_arity) {
  const int n = target.arity;
  ImpossibilityResult out;
  if (n <= 3) {
    out.proven = false;
    out.reason = "the arity obstruction applies only to targets of arity "
                 "above 3; " +
                 target.name() + " has arity " + std::to_string(n);
    return out;
  }
  if (max_generator_arity >= n) {
    out.proven = false;
    out.reason = "a generator of arity " +
                 std::to_string(max_generator_arity) +
                 " >= " + std::to_string(n) +
                 " is available, so there is no arity obstruction";
    return out;
  }
  out.proven = true;
  out.reason =
      target.name() + " has arity " + std::to_string(n) +
      " > 3, and every generator has arity at most " +
      std::to_string(max_generator_arity) +
      "; a one-missing-layer function of arity above 3 is realizable only "
      "over a generator of at least its own arity";
  return out;
}

namespace {

/// Sorts and deduplicates by (arity, excluded 1-count) with the supplied
/// ordering for arity; the excluded 1-count ties ascending.
std::vector<ExcludedLayerFunction> sorted_unique_members(
    const std::vector<ExcludedLayerFunction>& members, bool arity_descending) {
  std::vector<ExcludedLayerFunction> ms = members;
  std::sort(ms.begin(), ms.end(),
            [&](const ExcludedLayerFunction& a,
                const ExcludedLayerFunction& b) {
              if (a.arity != b.arity) {
                return arity_descending ? a.arity > b.arity
                                        : a.arity < b.arity;
              }
              return a.e() < b.e();
            });
  ms.erase(std::unique(ms.begin(), ms.end(),
                       [](const ExcludedLayerFunction& a,
                          const ExcludedLayerFunction& b) {
                         return a.arity == b.arity && a.e() == b.e();
                       }),
           ms.end());
  return ms;
}

}  // namespace

ReductionResult reduce_to_single_generator(
    const std::vector<ExcludedLayerFunction>& members) {
  ReductionResult out;
  const std::vector<ExcludedLayerFunction> ms =
      sorted_unique_members(members, /*arity_descending=*/false);
  for (std::size_t c = 0; c < ms.size(); ++c) {
    ReductionAttempt attempt{ms[c], false, {}, {}};
    bool all_proven = true;
    for (std::size_t t = 0; t < ms.size(); ++t) {
      if (t == c) continue;
      attempt.targets.push_back(ms[t]);
      attempt.verdicts.push_back(synth_from_generator(ms[t], ms[c]));
      all_proven &= attempt.verdicts.back().kind == VerdictKind::Proven;
    }
    attempt.success = all_proven;
    if (all_proven) {
      out.generator = ms[c];
      for (const SynthVerdict& v : attempt.verdicts) {
        out.witnesses.push_back(*v.witness);
      }
      out.attempts.push_back(std::move(attempt));
      break;
    }
    out.attempts.push_back(std::move(attempt));
  }
  return out;
}

BasisResult find_basis(const std::vector<ExcludedLayerFunction>& members) {
  if (members.empty()) {
    throw std::invalid_argument("find_basis: the member set is empty");
  }
  BasisResult out;
  const std::vector<ExcludedLayerFunction> ms =
      sorted_unique_members(members, /*arity_descending=*/true);
  const std::size_t m = ms.size();

  // All pairwise verdicts up front, so elimination order cannot matter.
  std::vector<std::vector<SynthVerdict>> verdicts(m);
  for (std::size_t i = 0; i < m; ++i) {
    verdicts[i].reserve(m);
    for (std::size_t j = 0; j < m; ++j) {
      verdicts[i].push_back(synth_from_generator(ms[i], ms[j]));
    }
  }

  std::vector<bool> alive(m, true);
  struct Removal {
    std::size_t member;
    std::size_t prover;
  };
  std::vector<Removal> removals;
  std::unordered_map<std::size_t, std::size_t> removal_index;  // member -> slot
  bool changed = true;
  while (changed) {
    changed = false;
    // Smallest members first; provers tried largest-first (ms is sorted by
    // descending arity). Only a strictly larger member can prove a smaller
    // one, so the largest members always survive and the loop terminates.
    for (std::size_t ri = m; ri-- > 0;) {
      if (!alive[ri]) continue;
      for (std::size_t j = 0; j < m; ++j) {
        if (j == ri || !alive[j]) continue;
        if (verdicts[ri][j].kind == VerdictKind::Proven) {
          alive[ri] = false;
          removal_index[ri] = removals.size();
          removals.push_back(Removal{ri, j});
          changed = true;
          break;
        }
      }
    }
  }

  // Map generator names back to member indices, for witness repair below.
  std::unordered_map<std::string, std::size_t> member_by_name;
  for (std::size_t i = 0; i < m; ++i) member_by_name[ms[i].name()] = i;

  for (const Removal& r : removals) {
    std::size_t j = r.prover;
    if (!alive[j]) {
      // Prefer a direct witness from a survivor if one was proven.
      for (std::size_t j2 = 0; j2 < m; ++j2) {
        if (j2 != r.member && alive[j2] &&
            verdicts[r.member][j2].kind == VerdictKind::Proven) {
          j = j2;
          break;
        }
      }
    }
    if (alive[j]) {
      out.removed.push_back(BasisRemoval{ms[r.member],
                                         *verdicts[r.member][j].witness});
      continue;
    }
    // The only provers found were themselves removed: splice their own
    // witnesses in until every generator used is a survivor. Each splice
    // moves to a strictly larger member, so this terminates.
    FormulaPtr body = verdicts[r.member][j].witness->formula;
    for (;;) {
      std::size_t dead = m;
      for (const GeneratorPtr& g : generators_of(body)) {
        auto it = member_by_name.find(g->name());
        if (it != member_by_name.end() && !alive[it->second]) {
          dead = it->second;
          break;
        }
      }
      if (dead == m) break;
      const Removal& rd = removals[removal_index.at(dead)];
      body = replace_generator_applications(
          body, ms[dead].name(),
          verdicts[rd.member][rd.prover].witness->formula);
    }
    out.removed.push_back(BasisRemoval{
        ms[r.member],
        make_verified_witness(GeneratorSymbol::Semantics(ms[r.member]),
                              std::move(body))});
    out.notes.push_back("the witness for " + ms[r.member].name() +
                        " was rebuilt by splicing witnesses of removed "
                        "intermediate members");
  }

  for (std::size_t i = 0; i < m; ++i) {
    if (alive[i]) out.basis.push_back(ms[i]);
  }

  bool irredundant = true;
  for (std::size_t i = 0; i < m; ++i) {
    if (!alive[i]) continue;
    for (std::size_t j = 0; j < m; ++j) {
      if (j == i) continue;
      const SynthVerdict& v = verdicts[i][j];
      if (v.kind == VerdictKind::Proven) {
        // Only possible when the prover was removed yet no survivor proves
        // ms[i]; the member stays, since the basis must generate it itself.
        out.notes.push_back(ms[i].name() + " is realizable over removed " +
                            ms[j].name() +
                            " but over no surviving member; kept");
        continue;
      }
      out.negatives.push_back(
          BasisNegative{ms[i], ms[j], v.kind, v.reason});
      if (alive[j] && v.kind != VerdictKind::Refuted) irredundant = false;
    }
  }
  out.irredundant_proven = irredundant;
  return out;
}

NoBasisEvidence no_basis_evidence(const FamilySpec& family,
                                  int prefix_length) {
  if (prefix_length < 1) {
    throw std::invalid_argument(
        "no_basis_evidence: prefix length must be >= 1");
  }
  const int known = family.known_size();
  if (known >= 0 && prefix_length > known) {
    throw std::invalid_argument(
        "no_basis_evidence: prefix length exceeds the family size");
  }
  NoBasisEvidence out{family, {}, false, ""};
  // How far past each member to look for a generating later member. The
  // bounded schemes kick in within a constant factor of the member's arity,
  // so a fixed horizon is plenty for the families this runs on.
  constexpr int kHorizon = 64;
  bool all = true;
  for (int i = 0; i < prefix_length; ++i) {
    const ExcludedLayerFunction f = family.member(i);
    FamilyEvidence item{f, {}, {}, {}, false, {}};
    const int end = known >= 0 ? known : i + 1 + kHorizon;
    for (int j = i + 1; j < end; ++j) {
      const ExcludedLayerFunction g = family.member(j);
      SynthVerdict v = synth_from_generator(f, g);
      if (v.kind != VerdictKind::Proven) continue;
      item.later_member = g;
      item.generated_from_later = std::move(*v.witness);
      item.cannot_generate_later = arity_impossibility(g, f.arity);
      item.proven = item.generated_from_later->verified &&
                    item.cannot_generate_later.proven;
      if (!item.generated_from_later->verified) {
        item.note = "the witness is construction-backed but was too large "
                    "to sweep end-to-end";
      }
      break;
    }
    if (!item.later_member.has_value()) {
      item.note = "no later member within the search horizon was shown to "
                  "generate this member";
    }
    all &= item.proven;
    out.items.push_back(std::move(item));
  }
  out.all_proven = all;
  out.conclusion =
      all ? "each examined member is generated by a later family member "
            "that provably cannot be generated back from it; no finite "
            "subfamily generates the whole family"
          : "the evidence is incomplete for at least one member; no "
            "conclusion is drawn";
  return out;
}

MutualGenerationReport family_mutual_generation(const FamilySpec& family,
                                                int count) {
  if (count < 1) {
    throw std::invalid_argument(
        "family_mutual_generation: count must be >= 1");
  }
  const int known = family.known_size();
  if (known >= 0 && count > known) {
    throw std::invalid_argument(
        "family_mutual_generation: count exceeds the family size");
  }
  MutualGenerationReport out;
  for (int i = 0; i < count; ++i) out.members.push_back(family.member(i));
  out.matrix.resize(out.members.size());
  bool all = true;
  for (std::size_t i = 0; i < out.members.size(); ++i) {
    out.matrix[i].reserve(out.members.size());
    for (std::size_t j = 0; j < out.members.size(); ++j) {
      out.matrix[i].push_back(
          synth_from_generator(out.members[i], out.members[j]));
      if (i != j) all &= out.matrix[i][j].kind == VerdictKind::Proven;
    }
  }
  out.all_off_diagonal_proven = all;
  return out;
}

namespace {

GeneratorPtr random_generator(Rng& rng, int& table_counter) {
  switch (rng.below(3)) {
    case 0: {
      const int a = rng.int_in(1, 4);
      const int e = rng.int_in(0, a);
      return make_generator(ExcludedLayerFunction(a, e, a - e));
    }
    case 1: {
      const int a = rng.int_in(1, 4);
      std::vector<int> ones;
      for (int layer = 0; layer <= a; ++layer) {
        if (rng.coin()) ones.push_back(layer);
      }
      return make_generator(SymmetricRFunction(a, std::move(ones)));
    }
    default: {
      const int a = rng.int_in(1, 3);
      return make_generator("t" + std::to_string(++table_counter),
                            random_r_function(a, rng));
    }
  }
}

std::string point_text(const TernaryTuple& t) {
  std::string s = "(";
  for (int i = 1; i <= t.arity(); ++i) {
    if (i > 1) s += ",";
    s += std::to_string(int(t.at(i)));
  }
  return s + ")";
}

}  // namespace

RClosureCheck verify_r_closed(int formula_count, int max_arity, int max_depth,
                              std::uint64_t seed) {
  if (formula_count < 1) {
    throw std::invalid_argument("verify_r_closed: formula count must be >= 1");
  }
  if (max_arity < 1 || max_arity > 8) {
    throw std::invalid_argument(
        "verify_r_closed: max arity must be in 1..8 (full-domain sweeps)");
  }
  if (max_depth < 1) {
    throw std::invalid_argument("verify_r_closed: max depth must be >= 1");
  }
  constexpr std::size_t kMaxDetails = 20;
  RClosureCheck out;
  Rng rng(seed);

  for (int k = 0; k < formula_count; ++k) {
    const int arity = rng.int_in(1, max_arity);
    int table_counter = 0;
    std::vector<GeneratorPtr> gens;
    const int gen_count = rng.int_in(2, 4);
    for (int i = 0; i < gen_count; ++i) {
      gens.push_back(random_generator(rng, table_counter));
    }

    // Random application tree: leaves at the depth cap, otherwise one
    // chance in three of stopping early; the root is always an application.
    auto build = [&](auto&& self, int depth) -> FormulaPtr {
      if (depth >= max_depth || (depth > 0 && rng.below(3) == 0)) {
        return Formula::var(rng.int_in(1, arity));
      }
      const GeneratorPtr& g = gens[rng.below(gens.size())];
      std::vector<FormulaPtr> args;
      args.reserve(static_cast<std::size_t>(g->arity()));
      for (int j = 0; j < g->arity(); ++j) {
        args.push_back(self(self, depth + 1));
      }
      return Formula::apply(g, std::move(args));
    };
    FormulaPtr phi = build(build, 0);

    // Compact the variables actually used down to x1..x_eff, so the sweep
    // covers exactly the formula's support.
    const std::vector<int> support = variable_support(phi);
    const int eff = static_cast<int>(support.size());
    if (eff < max_var_index(phi) || support.back() != eff) {
      std::vector<FormulaPtr> repl(
          static_cast<std::size_t>(max_var_index(phi)), Formula::var(1));
      for (int rank = 1; rank <= eff; ++rank) {
        repl[static_cast<std::size_t>(support[rank - 1] - 1)] =
            Formula::var(rank);
      }
      phi = substitute(phi, repl);
    }

    const CompiledFormula compiled(phi);
    CompiledFormula::Scratch scratch;
    std::vector<FormulaPtr> applications;
    for (const FormulaPtr& node : subformulas(phi)) {
      if (!node->is_var()) applications.push_back(node);
    }

    ++out.formulas_checked;
    const std::uint64_t points = pow3(eff);
    auto report = [&](const TernaryTuple& t, const std::string& what) {
      ++out.violations;
      if (out.details.size() < kMaxDetails) {
        out.details.push_back(what + " at " + point_text(t) + " in " +
                              print_formula(phi, 2000));
      }
    };
    for (std::uint64_t idx = 0; idx < points; ++idx) {
      const TernaryTuple t = TernaryTuple::from_index(idx, eff);
      const std::vector<Value>& values =
          compiled.eval_all(t.components(), scratch);
      const Value root = values.back();
      ++out.points_checked;
      if (root > 1) report(t, "value outside {0,1}");
      if (t.contains_zero() && root != 0) {
        report(t, "nonzero value on a point with a 0 component");
      }
      bool any_zero = false;
      for (Value v : values) any_zero |= v == 0;
      if (any_zero && root != 0) {
        report(t, "a subterm vanishes but the root does not");
      }
      if (root == 1) {
        for (const FormulaPtr& app : applications) {
          if (compiled.value_of(app, scratch) != 1) {
            report(t, "root is 1 but an application subterm is not");
            break;
          }
        }
      }
    }
  }
  return out;
}

}  // namespace tcw
