#include <algorithm>
#include <string>
#include <vector>

#include "doctest.h"
#include "tcw/random.hpp"
#include "tcw/ternary.hpp"

using namespace tcw;

namespace {

/// Independent base-3 encoder used as the oracle for TernaryTuple::index.
std::uint64_t encode_base3(const std::vector<Value>& components) {
  std::uint64_t index = 0;
  std::uint64_t weight = 1;
  for (Value c : components) {
    index += c * weight;
    weight *= 3;
  }
  return index;
}

/// Independent evaluator for an excluded-layer function: 0 on any tuple
/// containing 0, 0 when the 1-count equals the excluded 1-count, else 1.
Value elf_oracle(const ExcludedLayerFunction& f, const TernaryTuple& t) {
  if (t.contains_zero()) return 0;
  return t.count_ones() == f.e() ? 0 : 1;
}

/// Independent evaluator for a symmetric layer-set function.
Value symm_oracle(const SymmetricRFunction& f, const TernaryTuple& t) {
  if (t.contains_zero()) return 0;
  const int ones = t.count_ones();
  const bool hit = std::find(f.one_layers.begin(), f.one_layers.end(), ones) !=
                   f.one_layers.end();
  return hit ? 1 : 0;
}

std::string table_string(const TernaryFunction& f) {
  std::string out;
  for (Value v : f.table()) out += static_cast<char>('0' + v);
  return out;
}

}  // namespace

TEST_CASE("pow3 matches repeated multiplication") {
  CHECK(pow3(0) == 1);
  CHECK(pow3(1) == 3);
  CHECK(pow3(4) == 81);
  CHECK(pow3(12) == 531441);
}

TEST_CASE("tuple index encoding round-trips and matches the oracle") {
  for (int arity = 1; arity <= 4; ++arity) {
    for (std::uint64_t index = 0; index < pow3(arity); ++index) {
      const TernaryTuple t = TernaryTuple::from_index(index, arity);
      CHECK(t.arity() == arity);
      CHECK(t.index() == index);
      CHECK(encode_base3(t.components()) == index);
    }
  }
  // Component 1 is the least significant digit.
  const TernaryTuple t = TernaryTuple::from_index(5, 2);
  CHECK(t.components() == std::vector<Value>{2, 1});
  CHECK(t.to_string() == "(2,1)");
  CHECK_THROWS_AS(TernaryTuple::from_index(9, 2), std::out_of_range);
}

TEST_CASE("tuple construction rejects out-of-domain components") {
  CHECK_THROWS_AS(TernaryTuple({0, 3}), std::invalid_argument);
  CHECK_THROWS_AS(TernaryTuple(std::vector<Value>{}), std::invalid_argument);
}

TEST_CASE("tuple counts and layer membership") {
  const TernaryTuple t({1, 2, 1});
  CHECK(!t.contains_zero());
  CHECK(t.count_ones() == 2);
  CHECK(t.count_twos() == 1);
  REQUIRE(layer_of(t).has_value());
  CHECK(*layer_of(t) == Layer{2, 1});
  CHECK(layer_of(t)->arity() == 3);
  CHECK(!layer_of(TernaryTuple({1, 0, 2})).has_value());
}

TEST_CASE("excluded-layer functions match the independent evaluator") {
  for (int n = 1; n <= 4; ++n) {
    for (int e = 0; e <= n; ++e) {
      const ExcludedLayerFunction f(n, e, n - e);
      CHECK(f.e() == e);
      CHECK(f.d() == n - e);
      for (std::uint64_t index = 0; index < pow3(n); ++index) {
        const TernaryTuple t = TernaryTuple::from_index(index, n);
        CHECK(f.eval(t) == elf_oracle(f, t));
        CHECK(f.eval_values(t.components()) == elf_oracle(f, t));
      }
    }
  }
}

TEST_CASE("excluded-layer truth tables frozen for arity 2") {
  // Base-3 order with component 1 least significant; see the oracle above.
  CHECK(table_string(to_truth_table(ExcludedLayerFunction(2, 1, 1))) ==
        "000010001");
  CHECK(table_string(to_truth_table(ExcludedLayerFunction(2, 0, 2))) ==
        "000011010");
  CHECK(table_string(to_truth_table(ExcludedLayerFunction(2, 2, 0))) ==
        "000001011");
}

TEST_CASE("excluded-layer descriptors validate and name themselves") {
  CHECK(ExcludedLayerFunction(4, 1, 3).name() == "s4_1_3");
  CHECK_THROWS_AS(ExcludedLayerFunction(4, 1, 2), std::invalid_argument);
  CHECK_THROWS_AS(ExcludedLayerFunction(0, 0, 0), std::invalid_argument);
}

TEST_CASE("symmetric layer-set functions match the independent evaluator") {
  for (int n = 1; n <= 3; ++n) {
    // Every subset of {0..n} as a layer set.
    for (unsigned mask = 0; mask < (1u << (n + 1)); ++mask) {
      std::vector<int> layers;
      for (int k = 0; k <= n; ++k)
        if (mask & (1u << k)) layers.push_back(k);
      const SymmetricRFunction f(n, layers);
      for (std::uint64_t index = 0; index < pow3(n); ++index) {
        const TernaryTuple t = TernaryTuple::from_index(index, n);
        CHECK(f.eval(t) == symm_oracle(f, t));
      }
    }
  }
}

TEST_CASE("all-ones combiners and their names") {
  const SymmetricRFunction i2 = SymmetricRFunction::all_of(2);
  CHECK(i2.is_all_ones());
  CHECK(i2.name() == "i2");
  CHECK(i2.one_layers == std::vector<int>{0, 1, 2});
  CHECK(table_string(to_truth_table(i2)) == "000011011");
  CHECK(SymmetricRFunction(4, {0, 4}).name() == "symm4_0_4");
  CHECK(!SymmetricRFunction(4, {0, 4}).is_all_ones());
}

TEST_CASE("symmetric descriptors normalize layers and reject bad ones") {
  CHECK_THROWS_AS(SymmetricRFunction(2, {3}), std::invalid_argument);
  CHECK_THROWS_AS(SymmetricRFunction(2, {-1}), std::invalid_argument);
  // Unordered or repeated layer lists are normalized, not rejected.
  CHECK(SymmetricRFunction(2, {1, 1}).one_layers == std::vector<int>{1});
  CHECK(SymmetricRFunction(3, {2, 0}).one_layers == std::vector<int>{0, 2});
}

TEST_CASE("classification separates the three nested classes") {
  const Classification elf = classify(to_truth_table(ExcludedLayerFunction(2, 1, 1)));
  CHECK(elf.in_r);
  CHECK(elf.in_s);
  CHECK(elf.in_s_minus_1);

  // All-ones on the positive grid: symmetric but excludes no layer.
  const Classification i2 = classify(to_truth_table(SymmetricRFunction::all_of(2)));
  CHECK(i2.in_r);
  CHECK(i2.in_s);
  CHECK(!i2.in_s_minus_1);

  // Two excluded layers: symmetric but not one-missing-layer.
  const Classification two_gaps = classify(to_truth_table(SymmetricRFunction(2, {1})));
  CHECK(two_gaps.in_r);
  CHECK(two_gaps.in_s);
  CHECK(!two_gaps.in_s_minus_1);

  // Asymmetric member of R: 1 only at (1,2).
  TernaryFunction asym(2, {0, 0, 0, 0, 0, 0, 0, 1, 0});
  const Classification r_only = classify(asym);
  CHECK(r_only.in_r);
  CHECK(!r_only.in_s);

  // Value 2 somewhere: outside all three classes.
  TernaryFunction wild(1, {0, 1, 2});
  const Classification none = classify(wild);
  CHECK(!none.in_r);
  CHECK(!none.in_s);
  CHECK(!none.in_s_minus_1);

  // Nonzero at a point containing 0: not zero-propagating.
  TernaryFunction leaky(1, {1, 1, 1});
  CHECK(!classify(leaky).in_r);
}

TEST_CASE("essential arity counts variables that can change the output") {
  // Projection onto x1, read as a binary function: x2 is inessential.
  std::vector<Value> proj(9);
  for (std::uint64_t i = 0; i < 9; ++i)
    proj[i] = TernaryTuple::from_index(i, 2).at(1);
  CHECK(essential_arity(TernaryFunction(2, proj)) == 1);
  CHECK(essential_arity(TernaryFunction(2, std::vector<Value>(9, 0))) == 0);
  CHECK(essential_arity(to_truth_table(ExcludedLayerFunction(2, 1, 1))) == 2);
}

TEST_CASE("variable permutation of tables composes with tuple permutation") {
  Rng rng(11);
  const TernaryFunction f = random_r_function(3, rng);
  const std::vector<int> sigma = {2, 3, 1};
  const TernaryFunction h = permute_variables(f, sigma);
  for (std::uint64_t index = 0; index < 27; ++index) {
    const TernaryTuple t = TernaryTuple::from_index(index, 3);
    const TernaryTuple mapped({t.at(2), t.at(3), t.at(1)});
    CHECK(h.value_at(t) == f.value_at(mapped));
  }
}

TEST_CASE("canonical tables are permutation invariants") {
  Rng rng(5);
  for (int round = 0; round < 10; ++round) {
    const TernaryFunction f = random_r_function(3, rng);
    const TernaryFunction g = permute_variables(f, {3, 1, 2});
    CHECK(canonical_table(f) == canonical_table(g));
    CHECK(congruent(f, g));
  }
  // The canonical form is the minimum over both permutations at arity 2.
  TernaryFunction one_point(2, {0, 0, 0, 0, 0, 1, 0, 0, 0});  // 1 at (2,1)
  const TernaryFunction swapped = permute_variables(one_point, {2, 1});
  const TernaryFunction canon = canonical_table(one_point);
  CHECK(canon == canonical_table(swapped));
  CHECK(std::min(one_point.table(), swapped.table()) == canon.table());
}

TEST_CASE("congruence distinguishes genuinely different functions") {
  const TernaryFunction a = to_truth_table(ExcludedLayerFunction(2, 1, 1));
  const TernaryFunction b = to_truth_table(ExcludedLayerFunction(2, 0, 2));
  CHECK(!congruent(a, b));
  CHECK(congruent(a, a));
}

TEST_CASE("catalogue enumeration lists the arity plus one members in order") {
  const std::vector<ExcludedLayerFunction> members = enumerate_s_minus_1(3);
  REQUIRE(members.size() == 4);
  CHECK(members[0].name() == "s3_0_3");
  CHECK(members[1].name() == "s3_1_2");
  CHECK(members[2].name() == "s3_2_1");
  CHECK(members[3].name() == "s3_3_0");
  CHECK(enumerate_s_minus_1(2).size() == 3);
}

TEST_CASE("random class members stay in the class") {
  Rng rng(99);
  for (int round = 0; round < 20; ++round) {
    const TernaryFunction f = random_r_function(rng.int_in(1, 3), rng);
    CHECK(classify(f).in_r);
  }
}
