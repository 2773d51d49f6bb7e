#include "tcw/ternary.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace tcw {

std::uint64_t pow3(int n) {
  if (n < 0 || n > 40) throw std::out_of_range("pow3: exponent out of range");
  std::uint64_t p = 1;
  for (int i = 0; i < n; ++i) p *= 3;
  return p;
}

TernaryTuple::TernaryTuple(std::vector<Value> components)
    : components_(std::move(components)) {
  if (components_.empty())
    throw std::invalid_argument("TernaryTuple: arity must be at least 1");
  for (Value v : components_)
    if (v > 2)
      throw std::invalid_argument("TernaryTuple: components must be 0, 1 or 2");
}

TernaryTuple TernaryTuple::from_index(std::uint64_t index, int arity) {
  if (arity < 1) throw std::invalid_argument("from_index: arity must be >= 1");
  if (index >= pow3(arity))
    throw std::out_of_range("from_index: index out of range for arity");
  std::vector<Value> comps(static_cast<std::size_t>(arity));
  for (int j = 0; j < arity; ++j) {
    comps[static_cast<std::size_t>(j)] = static_cast<Value>(index % 3);
    index /= 3;
  }
  return TernaryTuple(std::move(comps));
}

std::uint64_t TernaryTuple::index() const {
  std::uint64_t idx = 0;
  std::uint64_t weight = 1;
  for (Value v : components_) {
    idx += v * weight;
    weight *= 3;
  }
  return idx;
}

Value TernaryTuple::at(int position_1_based) const {
  if (position_1_based < 1 || position_1_based > arity())
    throw std::out_of_range("TernaryTuple::at: position out of range");
  return components_[static_cast<std::size_t>(position_1_based - 1)];
}

bool TernaryTuple::contains_zero() const {
  return std::find(components_.begin(), components_.end(), Value{0}) !=
         components_.end();
}

int TernaryTuple::count_ones() const {
  return static_cast<int>(
      std::count(components_.begin(), components_.end(), Value{1}));
}

int TernaryTuple::count_twos() const {
  return static_cast<int>(
      std::count(components_.begin(), components_.end(), Value{2}));
}

std::string TernaryTuple::to_string() const {
  std::ostringstream out;
  out << '(';
  for (std::size_t i = 0; i < components_.size(); ++i) {
    if (i) out << ',';
    out << static_cast<int>(components_[i]);
  }
  out << ')';
  return out.str();
}

std::optional<Layer> layer_of(const TernaryTuple& t) {
  if (t.contains_zero()) return std::nullopt;
  return Layer{t.count_ones(), t.count_twos()};
}

TernaryFunction::TernaryFunction(int arity, std::vector<Value> table)
    : arity_(arity), table_(std::move(table)) {
  if (arity_ < 1)
    throw std::invalid_argument("TernaryFunction: arity must be >= 1");
  if (table_.size() != pow3(arity_))
    throw std::invalid_argument("TernaryFunction: table must have 3^arity entries");
  for (Value v : table_)
    if (v > 2)
      throw std::invalid_argument("TernaryFunction: values must be 0, 1 or 2");
}

Value TernaryFunction::value_at(const TernaryTuple& t) const {
  if (t.arity() != arity_)
    throw std::invalid_argument("TernaryFunction::value_at: arity mismatch");
  return table_[t.index()];
}

ExcludedLayerFunction::ExcludedLayerFunction(int arity_in, int excluded_ones,
                                             int excluded_twos)
    : arity(arity_in), excluded{excluded_ones, excluded_twos} {
  if (arity < 1)
    throw std::invalid_argument("ExcludedLayerFunction: arity must be >= 1");
  if (excluded_ones < 0 || excluded_twos < 0 ||
      excluded_ones + excluded_twos != arity)
    throw std::invalid_argument(
        "ExcludedLayerFunction: requires e >= 0, d >= 0 and e + d = n");
}

Value ExcludedLayerFunction::eval(const TernaryTuple& t) const {
  if (t.arity() != arity)
    throw std::invalid_argument("ExcludedLayerFunction::eval: arity mismatch");
  return eval_values(t.components());
}

Value ExcludedLayerFunction::eval_values(std::span<const Value> values) const {
  int ones = 0;
  for (Value v : values) {
    if (v == 0) return 0;
    if (v == 1) ++ones;
  }
  return ones == excluded.ones ? Value{0} : Value{1};
}

std::string ExcludedLayerFunction::name() const {
  return "s" + std::to_string(arity) + "_" + std::to_string(e()) + "_" +
         std::to_string(d());
}

SymmetricRFunction::SymmetricRFunction(int arity_in,
                                       std::vector<int> one_layers_in)
    : arity(arity_in), one_layers(std::move(one_layers_in)) {
  if (arity < 1)
    throw std::invalid_argument("SymmetricRFunction: arity must be >= 1");
  std::sort(one_layers.begin(), one_layers.end());
  one_layers.erase(std::unique(one_layers.begin(), one_layers.end()),
                   one_layers.end());
  for (int e : one_layers)
    if (e < 0 || e > arity)
      throw std::invalid_argument(
          "SymmetricRFunction: layer 1-counts must lie in 0..arity");
}

SymmetricRFunction SymmetricRFunction::all_of(int s) {
  std::vector<int> all(static_cast<std::size_t>(s) + 1);
  std::iota(all.begin(), all.end(), 0);
  return SymmetricRFunction(s, std::move(all));
}

bool SymmetricRFunction::is_all_ones() const {
  return static_cast<int>(one_layers.size()) == arity + 1;
}

Value SymmetricRFunction::eval(const TernaryTuple& t) const {
  if (t.arity() != arity)
    throw std::invalid_argument("SymmetricRFunction::eval: arity mismatch");
  return eval_values(t.components());
}

Value SymmetricRFunction::eval_values(std::span<const Value> values) const {
  int ones = 0;
  for (Value v : values) {
    if (v == 0) return 0;
    if (v == 1) ++ones;
  }
  return std::binary_search(one_layers.begin(), one_layers.end(), ones)
             ? Value{1}
             : Value{0};
}

std::string SymmetricRFunction::name() const {
  if (is_all_ones()) return "i" + std::to_string(arity);
  std::string n = "symm" + std::to_string(arity);
  for (int e : one_layers) n += "_" + std::to_string(e);
  return n;
}

Classification classify(const TernaryFunction& f) {
  Classification c;
  const int n = f.arity();
  const std::uint64_t size = pow3(n);

  c.in_r = true;
  for (std::uint64_t idx = 0; idx < size && c.in_r; ++idx) {
    const Value v = f.value_at_index(idx);
    if (v > 1) {
      c.in_r = false;
      break;
    }
    if (v == 1) {
      // Reject a 1 on any tuple containing 0.
      std::uint64_t rest = idx;
      for (int j = 0; j < n; ++j) {
        if (rest % 3 == 0) {
          c.in_r = false;
          break;
        }
        rest /= 3;
      }
    }
  }
  if (!c.in_r) return c;

  c.in_s = is_symmetric(f);
  if (!c.in_s) return c;

  // Symmetric: the value on a layer is determined by its representative
  // (1,...,1,2,...,2). Exactly one zero layer within {1,2}^n qualifies.
  int zero_layers = 0;
  for (int e = 0; e <= n; ++e) {
    std::vector<Value> comps(static_cast<std::size_t>(n), Value{2});
    std::fill(comps.begin(), comps.begin() + e, Value{1});
    if (f.value_at(TernaryTuple(std::move(comps))) == 0) ++zero_layers;
  }
  c.in_s_minus_1 = zero_layers == 1;
  return c;
}

bool is_symmetric(const TernaryFunction& f) {
  const int n = f.arity();
  if (n == 1) return true;
  // Adjacent transpositions generate the whole symmetric group.
  for (int k = 1; k < n; ++k) {
    std::vector<int> sigma(static_cast<std::size_t>(n));
    std::iota(sigma.begin(), sigma.end(), 1);
    std::swap(sigma[static_cast<std::size_t>(k - 1)],
              sigma[static_cast<std::size_t>(k)]);
    if (permute_variables(f, sigma).table() != f.table()) return false;
  }
  return true;
}

int essential_arity(const TernaryFunction& f) {
  const int n = f.arity();
  const std::uint64_t size = pow3(n);
  int essential = 0;
  for (int j = 0; j < n; ++j) {
    const std::uint64_t weight = pow3(j);
    bool depends = false;
    for (std::uint64_t idx = 0; idx < size && !depends; ++idx) {
      if ((idx / weight) % 3 != 0) continue;  // visit each line once, at digit 0
      const Value v0 = f.value_at_index(idx);
      if (f.value_at_index(idx + weight) != v0 ||
          f.value_at_index(idx + 2 * weight) != v0)
        depends = true;
    }
    if (depends) ++essential;
  }
  return essential;
}

TernaryFunction permute_variables(const TernaryFunction& f,
                                  const std::vector<int>& sigma) {
  const int n = f.arity();
  if (static_cast<int>(sigma.size()) != n)
    throw std::invalid_argument("permute_variables: permutation size mismatch");
  std::vector<bool> seen(static_cast<std::size_t>(n) + 1, false);
  for (int s : sigma) {
    if (s < 1 || s > n || seen[static_cast<std::size_t>(s)])
      throw std::invalid_argument("permute_variables: not a permutation of 1..n");
    seen[static_cast<std::size_t>(s)] = true;
  }

  const std::uint64_t size = pow3(n);
  std::vector<std::uint64_t> weights(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) weights[static_cast<std::size_t>(j)] = pow3(j);

  std::vector<Value> out(size);
  std::vector<Value> digits(static_cast<std::size_t>(n), 0);
  for (std::uint64_t idx = 0; idx < size; ++idx) {
    // digits holds the components of the current tuple alpha.
    std::uint64_t src = 0;
    for (int j = 0; j < n; ++j)
      src += digits[static_cast<std::size_t>(sigma[static_cast<std::size_t>(j)] -
                                             1)] *
             weights[static_cast<std::size_t>(j)];
    out[idx] = f.value_at_index(src);
    // Base-3 odometer increment.
    for (int j = 0; j < n; ++j) {
      auto& d = digits[static_cast<std::size_t>(j)];
      if (d < 2) {
        ++d;
        break;
      }
      d = 0;
    }
  }
  return TernaryFunction(n, std::move(out));
}

TernaryFunction canonical_table(const TernaryFunction& f, int perm_cap) {
  const int n = f.arity();
  if (n > perm_cap)
    throw std::invalid_argument(
        "canonical_table: arity exceeds the permutation cap");
  std::vector<int> sigma(static_cast<std::size_t>(n));
  std::iota(sigma.begin(), sigma.end(), 1);
  std::vector<Value> best = f.table();
  while (std::next_permutation(sigma.begin(), sigma.end())) {
    std::vector<Value> candidate = permute_variables(f, sigma).table();
    if (candidate < best) best = std::move(candidate);
  }
  return TernaryFunction(n, std::move(best));
}

bool congruent(const TernaryFunction& f, const TernaryFunction& g,
               int perm_cap) {
  if (f.arity() != g.arity()) return false;
  if (f.table() == g.table()) return true;
  if (is_symmetric(f) && is_symmetric(g)) return false;  // would have to be equal
  return canonical_table(f, perm_cap).table() ==
         canonical_table(g, perm_cap).table();
}

namespace {

template <typename Descriptor>
TernaryFunction tabulate(const Descriptor& f, int arity_cap) {
  if (f.arity > arity_cap)
    throw std::invalid_argument(
        "to_truth_table: arity exceeds the table materialization cap");
  const std::uint64_t size = pow3(f.arity);
  std::vector<Value> table(size);
  std::vector<Value> digits(static_cast<std::size_t>(f.arity), 0);
  for (std::uint64_t idx = 0; idx < size; ++idx) {
    table[idx] = f.eval_values(digits);
    for (int j = 0; j < f.arity; ++j) {
      auto& d = digits[static_cast<std::size_t>(j)];
      if (d < 2) {
        ++d;
        break;
      }
      d = 0;
    }
  }
  return TernaryFunction(f.arity, std::move(table));
}

}  // namespace

TernaryFunction to_truth_table(const ExcludedLayerFunction& f, int arity_cap) {
  return tabulate(f, arity_cap);
}

TernaryFunction to_truth_table(const SymmetricRFunction& f, int arity_cap) {
  return tabulate(f, arity_cap);
}

std::vector<ExcludedLayerFunction> enumerate_s_minus_1(int arity) {
  if (arity < 1)
    throw std::invalid_argument("enumerate_s_minus_1: arity must be >= 1");
  std::vector<ExcludedLayerFunction> out;
  out.reserve(static_cast<std::size_t>(arity) + 1);
  for (int e = 0; e <= arity; ++e)
    out.emplace_back(arity, e, arity - e);
  return out;
}

}  // namespace tcw
