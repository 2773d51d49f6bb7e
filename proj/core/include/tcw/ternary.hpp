#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

/// Core value domain for functions of three-valued logic over E3 = {0,1,2},
/// together with the two symmetric function shapes this project revolves
/// around: functions that are 1 on all of {1,2}^n except a single layer
/// (ExcludedLayerFunction) and symmetric two-valued functions described by
/// the set of layers where they equal 1 (SymmetricRFunction).
///
/// Conventions used throughout:
///  * tuples are 1-indexed in the math but stored 0-indexed,
///  * truth tables are flat arrays indexed base-3 with component 1 as the
///    least significant digit: index = sum_j t_j * 3^(j-1),
///  * a "layer" of {1,2}^n collects the tuples with a fixed number of 1s.
namespace tcw {

using Value = std::uint8_t;

/// Default cap on arities for operations that walk all n! variable
/// permutations of a full table (canonical forms, congruence).
inline constexpr int kDefaultTableArityCap = 7;

/// Default cap on arities for materializing a full 3^n truth table.
inline constexpr int kDefaultWitnessTableCap = 12;

std::uint64_t pow3(int n);

/// A point of E3^n. Always non-empty; components are validated on
/// construction.
class TernaryTuple {
 public:
  explicit TernaryTuple(std::vector<Value> components);

  /// Decodes a base-3 index (component 1 least significant) into a tuple of
  /// the given arity. Throws std::out_of_range if index >= 3^arity.
  static TernaryTuple from_index(std::uint64_t index, int arity);

  /// Base-3 encoding; inverse of from_index for the same arity.
  std::uint64_t index() const;

  int arity() const { return static_cast<int>(components_.size()); }
  Value at(int position_1_based) const;
  const std::vector<Value>& components() const { return components_; }

  bool contains_zero() const;
  int count_ones() const;
  int count_twos() const;

  std::string to_string() const;  // e.g. "(1,2,0)"

  friend bool operator==(const TernaryTuple&, const TernaryTuple&) = default;
  friend auto operator<=>(const TernaryTuple&, const TernaryTuple&) = default;

 private:
  std::vector<Value> components_;
};

/// A layer of {1,2}^(ones+twos): all tuples with exactly `ones` components
/// equal to 1 and `twos` equal to 2.
struct Layer {
  int ones = 0;
  int twos = 0;

  int arity() const { return ones + twos; }

  friend bool operator==(const Layer&, const Layer&) = default;
  friend auto operator<=>(const Layer&, const Layer&) = default;
};

/// Layer containing the tuple, or nullopt if any component is 0.
std::optional<Layer> layer_of(const TernaryTuple& t);

/// An arbitrary function E3^n -> E3 as a flat base-3 indexed table.
class TernaryFunction {
 public:
  TernaryFunction(int arity, std::vector<Value> table);

  int arity() const { return arity_; }
  Value value_at(const TernaryTuple& t) const;
  Value value_at_index(std::uint64_t index) const { return table_[index]; }
  const std::vector<Value>& table() const { return table_; }

  friend bool operator==(const TernaryFunction&, const TernaryFunction&) = default;

 private:
  int arity_;
  std::vector<Value> table_;
};

/// Member of S_{-1}: the symmetric function of arity `excluded.arity()` that
/// is 0 on every tuple containing 0, 0 on the excluded layer, and 1 on the
/// rest of {1,2}^n. Identified by (n, e, d) with e + d = n.
struct ExcludedLayerFunction {
  int arity = 0;
  Layer excluded;

  ExcludedLayerFunction(int arity_in, int excluded_ones, int excluded_twos);

  int e() const { return excluded.ones; }
  int d() const { return excluded.twos; }

  Value eval(const TernaryTuple& t) const;
  /// Evaluation over raw component values (same semantics as eval).
  Value eval_values(std::span<const Value> values) const;

  /// Canonical symbol name, e.g. "s4_1_3" for (n=4, e=1, d=3).
  std::string name() const;

  friend bool operator==(const ExcludedLayerFunction&,
                         const ExcludedLayerFunction&) = default;
};

/// A symmetric function with values in {0,1} that is 0 on every tuple
/// containing 0; described by the set of layer 1-counts where it equals 1.
struct SymmetricRFunction {
  int arity = 0;
  std::vector<int> one_layers;  // sorted, unique, each in [0, arity]

  SymmetricRFunction(int arity_in, std::vector<int> one_layers_in);

  /// The function that is 1 on all of {1,2}^s (one_layers = {0..s}).
  static SymmetricRFunction all_of(int s);

  bool is_all_ones() const;

  Value eval(const TernaryTuple& t) const;
  Value eval_values(std::span<const Value> values) const;

  /// Canonical symbol name: "i4" when 1 on all of {1,2}^4, otherwise e.g.
  /// "symm4_0_4" listing the layer 1-counts.
  std::string name() const;

  friend bool operator==(const SymmetricRFunction&,
                         const SymmetricRFunction&) = default;
};

struct Classification {
  bool in_r = false;          // values in {0,1}, 0 on any tuple containing 0
  bool in_s = false;          // in_r and symmetric
  bool in_s_minus_1 = false;  // in_s and 0 on exactly one layer of {1,2}^n
};

Classification classify(const TernaryFunction& f);

bool is_symmetric(const TernaryFunction& f);

/// Number of variables some input pair differing only there can change the
/// output on.
int essential_arity(const TernaryFunction& f);

/// h(x_1..x_n) = f(x_{sigma(1)}, ..., x_{sigma(n)}); sigma is 1-based.
TernaryFunction permute_variables(const TernaryFunction& f,
                                  const std::vector<int>& sigma);

/// Minimum table over all arity! variable permutations; invariant of the
/// congruence class. Throws if arity exceeds perm_cap.
TernaryFunction canonical_table(const TernaryFunction& f,
                                int perm_cap = kDefaultTableArityCap);

/// True iff the two functions coincide up to renaming variables. Reduces to
/// table equality when both inputs are symmetric.
bool congruent(const TernaryFunction& f, const TernaryFunction& g,
               int perm_cap = kDefaultTableArityCap);

TernaryFunction to_truth_table(const ExcludedLayerFunction& f,
                               int arity_cap = kDefaultWitnessTableCap);
TernaryFunction to_truth_table(const SymmetricRFunction& f,
                               int arity_cap = kDefaultWitnessTableCap);

/// All n+1 members of S_{-1} of the given arity, ordered by excluded 1-count.
std::vector<ExcludedLayerFunction> enumerate_s_minus_1(int arity);

}  // namespace tcw
