#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "tcw/formula.hpp"

/// One-line text formats for function descriptors and function families, as
/// accepted on the command line and emitted in reports. Both directions are
/// exact: parse(print(x)) reproduces x, and malformed input is rejected with
/// a message naming the offending key.
///
/// Function descriptors (whitespace-separated key=value fields):
///   sminus1 n=4 e=1 d=3          one excluded layer, e + d = n
///   symm n=4 ones=0,4            symmetric, 1 exactly on the listed layers
///   table n=2 vals=010011011     flat base-3 table, 3^n digits from {0,1,2}
///
/// Families of excluded-layer functions:
///   family fixed_e=1 [start=4] [step=1]    members s_n(e=1) for n = start,
///                                          start+step, ... (unbounded)
///   family fixed_d=2 [start=4] [step=1]    mirror with fixed 2-count
///   family list=(2,2);(3,12);(4,60)        explicit (e,d) members
namespace tcw {

/// Parses one function descriptor line. Throws std::invalid_argument with a
/// human-readable reason on malformed input.
GeneratorSymbol::Semantics parse_function_text(std::string_view text);

/// Canonical descriptor line for the function; inverse of parse_function_text.
std::string function_text(const GeneratorSymbol::Semantics& f);

/// A family of excluded-layer functions: either one of the two unbounded
/// single-parameter shapes, or an explicit finite list.
struct FamilySpec {
  enum class Kind { FixedE, FixedD, List };

  Kind kind = Kind::List;
  int param = 0;       // the fixed 1-count (FixedE) or 2-count (FixedD)
  int arity_start = 0;  // first member arity (FixedE/FixedD)
  int arity_step = 1;
  std::vector<Layer> members;  // List: explicit (ones, twos) pairs

  static FamilySpec fixed_e(int e, int arity_start = -1, int arity_step = 1);
  static FamilySpec fixed_d(int d, int arity_start = -1, int arity_step = 1);
  static FamilySpec list(std::vector<Layer> members);

  /// Number of members, or -1 for the unbounded shapes.
  int known_size() const {
    return kind == Kind::List ? static_cast<int>(members.size()) : -1;
  }

  /// The index-th member (0-based). Throws std::out_of_range past the end of
  /// a finite list.
  ExcludedLayerFunction member(int index) const;
};

FamilySpec parse_family_text(std::string_view text);
std::string family_text(const FamilySpec& spec);

}  // namespace tcw
