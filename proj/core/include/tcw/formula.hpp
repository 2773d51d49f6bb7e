#pragma once

#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "tcw/ternary.hpp"

/// Formula terms over a set of named generators. Nodes are immutable and
/// shared (substitution and the synthesized witnesses reuse subterms
/// aggressively), so a term whose fully expanded tree is astronomically large
/// still occupies memory proportional to its distinct subterms. All
/// traversals below are iterative and visit each distinct node once; the same
/// holds for evaluation, which makes sweeping a large witness over all input
/// tuples cheap. Everything here is a value: concurrent evaluation of one
/// formula on many tuples from several threads is safe.
namespace tcw {

struct ParseError : std::runtime_error {
  ParseError(std::size_t position_in, const std::string& message)
      : std::runtime_error(message + " (at offset " +
                           std::to_string(position_in) + ")"),
        position(position_in) {}
  std::size_t position;
};

/// A named generator: a function symbol with one of the three semantic
/// backings. Names for descriptor-backed symbols are derived from the
/// descriptor (s4_1_3, i3, symm4_0_4) so emitted formulas are re-parseable.
class GeneratorSymbol {
 public:
  using Semantics =
      std::variant<ExcludedLayerFunction, SymmetricRFunction, TernaryFunction>;

  GeneratorSymbol(std::string name, Semantics semantics);

  const std::string& name() const { return name_; }
  int arity() const { return arity_; }
  const Semantics& semantics() const { return semantics_; }

  Value eval_values(std::span<const Value> args) const;

  /// True when the semantics provably yields 0 on any input containing 0 and
  /// values in {0,1} (immediate for the two descriptor kinds; classified once
  /// at construction for table backings).
  bool known_in_r() const { return known_in_r_; }

  friend bool operator==(const GeneratorSymbol& a, const GeneratorSymbol& b) {
    return a.name_ == b.name_ && a.semantics_ == b.semantics_;
  }

 private:
  std::string name_;
  Semantics semantics_;
  int arity_;
  bool known_in_r_;
};

using GeneratorPtr = std::shared_ptr<const GeneratorSymbol>;

GeneratorPtr make_generator(const ExcludedLayerFunction& f);
GeneratorPtr make_generator(const SymmetricRFunction& f);
GeneratorPtr make_generator(std::string name, GeneratorSymbol::Semantics sem);

/// Name -> symbol environment used when parsing formulas. Iteration order is
/// by name, so anything derived from a GeneratorSet is deterministic.
class GeneratorSet {
 public:
  /// Adds a symbol; returns the stored one. Re-adding an identical symbol is
  /// a no-op, a same-name symbol with different semantics is an error.
  GeneratorPtr add(GeneratorPtr symbol);
  GeneratorPtr find(const std::string& name) const;  // nullptr if absent
  std::vector<GeneratorPtr> symbols() const;         // name order
  std::size_t size() const { return by_name_.size(); }

 private:
  std::vector<std::pair<std::string, GeneratorPtr>> by_name_;  // sorted
};

class Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

/// Either a variable x_k (k >= 1) or an application of a generator to
/// argument terms (argument count always equals the generator arity).
class Formula {
 public:
  static FormulaPtr var(int index_1_based);
  static FormulaPtr apply(GeneratorPtr symbol, std::vector<FormulaPtr> args);

  bool is_var() const { return symbol_ == nullptr; }
  int var_index() const { return var_index_; }
  const GeneratorPtr& symbol() const { return symbol_; }
  const std::vector<FormulaPtr>& args() const { return args_; }

  ~Formula();  // iterative release of deep argument chains

 private:
  Formula() = default;
  int var_index_ = 0;
  GeneratorPtr symbol_;
  std::vector<FormulaPtr> args_;
};

/// A permutation of variable positions 1..n.
class VariablePermutation {
 public:
  explicit VariablePermutation(std::vector<int> images_1_based);
  static VariablePermutation identity(int n);
  /// All n! permutations in lexicographic order of their image vectors.
  static std::vector<VariablePermutation> all(int n);

  int size() const { return static_cast<int>(images_.size()); }
  int operator()(int i_1_based) const;
  VariablePermutation inverse() const;
  VariablePermutation compose_after(const VariablePermutation& inner) const;

  /// (t_{sigma(1)}, ..., t_{sigma(n)}).
  TernaryTuple permuted_components(const TernaryTuple& t) const;

  friend bool operator==(const VariablePermutation&,
                         const VariablePermutation&) = default;

 private:
  std::vector<int> images_;
};

Value eval(const FormulaPtr& phi, const TernaryTuple& t);
int depth(const FormulaPtr& phi);       // variables have depth 0
int max_var_index(const FormulaPtr& phi);
std::vector<int> variable_support(const FormulaPtr& phi);  // sorted indices

/// Distinct subterms in order of first pre-order visit, phi itself first.
std::vector<FormulaPtr> subformulas(const FormulaPtr& phi);

/// Distinct generators appearing in phi, ordered by name.
std::vector<GeneratorPtr> generators_of(const FormulaPtr& phi);

/// Renames Var(i) to Var(sigma(i)). With this orientation,
///   eval(apply_permutation(phi, sigma), t) == eval(phi, sigma.permuted_components(t)).
FormulaPtr apply_permutation(const FormulaPtr& phi,
                             const VariablePermutation& sigma);

/// Replaces Var(i) by args[i-1]; every variable of phi must be covered.
FormulaPtr substitute(const FormulaPtr& phi,
                      std::span<const FormulaPtr> args);

/// Node count of the fully expanded (unshared) term, saturating at
/// uint64 max.
std::uint64_t tree_size(const FormulaPtr& phi);

/// Truth table of phi read as a function of x_1..x_n. Requires
/// max_var_index(phi) <= n <= arity_cap.
TernaryFunction semantic_function(const FormulaPtr& phi, int arity,
                                  int arity_cap = kDefaultWitnessTableCap);

/// S-expression form: term := var | "(" name term+ ")", var := x<digits>.
/// Output longer than max_chars is replaced by a "<term with N nodes ...>"
/// summary (witness terms can expand to astronomically many positions).
std::string print_formula(const FormulaPtr& phi,
                          std::uint64_t max_chars = 1u << 20);

/// Parses the grammar above against the environment. When auto_intern is
/// true, unknown names matching a derived descriptor pattern (i3, s4_1_3,
/// symm4_0_4) are created and added to env on the fly.
FormulaPtr parse_formula(std::string_view text, GeneratorSet& env,
                         bool auto_intern = false);

/// One formula compiled to a flat postorder program over its distinct nodes.
/// eval() with an external scratch buffer is safe to call concurrently.
class CompiledFormula {
 public:
  struct Scratch {
    std::vector<Value> values;
  };

  explicit CompiledFormula(const FormulaPtr& root);

  std::size_t node_count() const { return ops_.size(); }
  Value eval(std::span<const Value> point, Scratch& scratch) const;
  Value eval(std::span<const Value> point) const;
  Value eval(const TernaryTuple& t) const;

  /// Values of all distinct subterms at the point, in the compiled postorder
  /// (root last). Use value_of to look up the value of a specific subterm.
  const std::vector<Value>& eval_all(std::span<const Value> point,
                                     Scratch& scratch) const;
  Value value_of(const FormulaPtr& node, const Scratch& scratch) const;

 private:
  enum class OpKind : std::uint8_t { Var, Excluded, Symmetric, Table };
  struct Op {
    OpKind kind;
    int var_index;                 // Var
    int excluded_ones;             // Excluded
    const SymmetricRFunction* symm;  // Symmetric (owned by symbol)
    const TernaryFunction* table;    // Table (owned by symbol)
    std::uint32_t args_begin, args_end;  // span into child_slots_
  };

  std::vector<Op> ops_;                    // postorder, root last
  std::vector<std::uint32_t> child_slots_;  // indices into ops_
  std::vector<std::pair<const Formula*, std::uint32_t>> slot_of_;  // sorted
  FormulaPtr root_;  // keeps every referenced node and symbol alive
  int min_point_arity_ = 0;
};

}  // namespace tcw
