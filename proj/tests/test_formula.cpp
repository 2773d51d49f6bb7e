#include <functional>
#include <vector>

#include "doctest.h"
#include "tcw/formula.hpp"
#include "tcw/random.hpp"

using namespace tcw;

namespace {

/// Independent recursive evaluator used as the oracle for eval() and
/// CompiledFormula (both of which are iterative).
Value eval_oracle(const FormulaPtr& phi, const TernaryTuple& t) {
  if (phi->is_var()) return t.at(phi->var_index());
  std::vector<Value> args;
  args.reserve(phi->args().size());
  for (const FormulaPtr& a : phi->args()) args.push_back(eval_oracle(a, t));
  return phi->symbol()->eval_values(args);
}

GeneratorPtr elf(int n, int e) {
  return make_generator(ExcludedLayerFunction(n, e, n - e));
}

/// A random term over random catalogue generators of arity <= 3, depth-capped.
FormulaPtr random_term(Rng& rng, int arity, int depth) {
  if (depth == 0 || rng.below(4) == 0)
    return Formula::var(rng.int_in(1, arity));
  const int n = rng.int_in(1, 3);
  const GeneratorPtr g = elf(n, rng.int_in(0, n));
  std::vector<FormulaPtr> args;
  for (int i = 0; i < n; ++i) args.push_back(random_term(rng, arity, depth - 1));
  return Formula::apply(g, std::move(args));
}

}  // namespace

TEST_CASE("variables and applications expose their structure") {
  const FormulaPtr x2 = Formula::var(2);
  CHECK(x2->is_var());
  CHECK(x2->var_index() == 2);

  const GeneratorPtr g = elf(2, 1);
  const FormulaPtr app = Formula::apply(g, {Formula::var(1), x2});
  CHECK(!app->is_var());
  CHECK(app->symbol()->name() == "s2_1_1");
  REQUIRE(app->args().size() == 2);
  CHECK(app->args()[1] == x2);
  CHECK_THROWS_AS(Formula::apply(g, {Formula::var(1)}), std::invalid_argument);
  CHECK_THROWS_AS(Formula::var(0), std::invalid_argument);
}

TEST_CASE("evaluation agrees with the recursive oracle on random terms") {
  Rng rng(17);
  for (int round = 0; round < 50; ++round) {
    const int arity = rng.int_in(1, 3);
    const FormulaPtr phi = random_term(rng, arity, 3);
    const CompiledFormula compiled(phi);
    for (std::uint64_t index = 0; index < pow3(arity); ++index) {
      const TernaryTuple t = TernaryTuple::from_index(index, arity);
      const Value expected = eval_oracle(phi, t);
      CHECK(eval(phi, t) == expected);
      CHECK(compiled.eval(t) == expected);
    }
  }
}

TEST_CASE("terms built from zero-propagating generators stay in the class") {
  // A 0 at any variable the term actually reads forces the whole term to 0:
  // the leaf evaluates to 0 and every generator maps an input containing 0
  // to 0, so the zero climbs to the root. Variables outside the support
  // impose nothing.
  Rng rng(23);
  for (int round = 0; round < 50; ++round) {
    const int arity = rng.int_in(1, 3);
    FormulaPtr phi = random_term(rng, arity, 3);
    if (phi->is_var()) continue;
    const std::vector<int> support = variable_support(phi);
    for (std::uint64_t index = 0; index < pow3(arity); ++index) {
      const TernaryTuple t = TernaryTuple::from_index(index, arity);
      const Value v = eval(phi, t);
      CHECK(v <= 1);
      bool zero_in_support = false;
      for (int j : support) zero_in_support |= t.at(j) == 0;
      if (zero_in_support) CHECK(v == 0);
    }
  }
}

TEST_CASE("structural measures on a shared chain") {
  const GeneratorPtr g = elf(2, 1);
  const FormulaPtr inner =
      Formula::apply(g, {Formula::var(1), Formula::var(2)});
  const FormulaPtr phi = Formula::apply(g, {inner, inner});
  CHECK(depth(phi) == 2);
  CHECK(max_var_index(phi) == 2);
  CHECK(variable_support(phi) == std::vector<int>{1, 2});
  // The expanded tree has 7 positions even though inner is shared.
  CHECK(tree_size(phi) == 7);
  // Distinct subterms: phi, inner, x1, x2.
  CHECK(subformulas(phi).size() == 4);
  REQUIRE(generators_of(phi).size() == 1);
  CHECK(generators_of(phi)[0]->name() == "s2_1_1");
}

TEST_CASE("permutation application matches the stated orientation") {
  Rng rng(31);
  const FormulaPtr phi = random_term(rng, 3, 3);
  for (const VariablePermutation& sigma : VariablePermutation::all(3)) {
    const FormulaPtr renamed = apply_permutation(phi, sigma);
    for (std::uint64_t index = 0; index < 27; ++index) {
      const TernaryTuple t = TernaryTuple::from_index(index, 3);
      CHECK(eval(renamed, t) == eval(phi, sigma.permuted_components(t)));
    }
  }
}

TEST_CASE("permutation algebra round-trips") {
  const std::vector<VariablePermutation> all3 = VariablePermutation::all(3);
  CHECK(all3.size() == 6);
  for (const VariablePermutation& sigma : all3) {
    CHECK(sigma.compose_after(sigma.inverse()) ==
          VariablePermutation::identity(3));
    CHECK(sigma.inverse().compose_after(sigma) ==
          VariablePermutation::identity(3));
  }
}

TEST_CASE("substitution composes semantically") {
  const GeneratorPtr g = elf(2, 1);
  const FormulaPtr phi = Formula::apply(g, {Formula::var(1), Formula::var(2)});
  const FormulaPtr arg1 = Formula::apply(g, {Formula::var(1), Formula::var(1)});
  const FormulaPtr arg2 = Formula::var(2);
  const FormulaPtr composed = substitute(phi, std::vector<FormulaPtr>{arg1, arg2});
  for (std::uint64_t index = 0; index < 9; ++index) {
    const TernaryTuple t = TernaryTuple::from_index(index, 2);
    const TernaryTuple inner({eval(arg1, t), eval(arg2, t)});
    CHECK(eval(composed, t) == eval(phi, inner));
  }
}

TEST_CASE("semantic tables match pointwise evaluation") {
  Rng rng(41);
  const FormulaPtr phi = random_term(rng, 2, 3);
  const TernaryFunction f = semantic_function(phi, 2);
  for (std::uint64_t index = 0; index < 9; ++index) {
    const TernaryTuple t = TernaryTuple::from_index(index, 2);
    CHECK(f.value_at(t) == eval(phi, t));
  }
  // Reading a term as a function of more variables than it uses is allowed;
  // fewer is not.
  CHECK(semantic_function(phi, 3).arity() == 3);
  const FormulaPtr x2 = Formula::var(2);
  CHECK_THROWS_AS(semantic_function(x2, 1), std::invalid_argument);
}

TEST_CASE("printing and parsing are mutually inverse") {
  Rng rng(53);
  for (int round = 0; round < 20; ++round) {
    const FormulaPtr phi = random_term(rng, 3, 3);
    const std::string text = print_formula(phi);
    GeneratorSet env;
    const FormulaPtr back = parse_formula(text, env, /*auto_intern=*/true);
    CHECK(print_formula(back) == text);
    for (std::uint64_t index = 0; index < 27; ++index) {
      const TernaryTuple t = TernaryTuple::from_index(index, 3);
      CHECK(eval(back, t) == eval(phi, t));
    }
  }
}

TEST_CASE("parser reports malformed input with its position") {
  GeneratorSet env;
  env.add(elf(2, 1));
  CHECK_THROWS_AS(parse_formula("(s2_1_1 x1", env), ParseError);
  CHECK_THROWS_AS(parse_formula("(s2_1_1 x1 x2 x3)", env), ParseError);
  CHECK_THROWS_AS(parse_formula("(unknown x1 x2)", env), ParseError);
  CHECK_THROWS_AS(parse_formula("x0", env), ParseError);
  CHECK_THROWS_AS(parse_formula("", env), ParseError);
  CHECK_THROWS_AS(parse_formula("(s2_1_1 x1 x2) trailing", env), ParseError);
  try {
    parse_formula("(s2_1_1 x1", env);
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.position == 0);  // points at the unclosed '('
    CHECK(std::string(e.what()).find("offset") != std::string::npos);
  }
  try {
    parse_formula("(s2_1_1 x1 x2) trailing", env);
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.position == 15);  // points at the trailing token
  }
}

TEST_CASE("parser interns derived descriptor names on demand") {
  GeneratorSet env;
  // Without auto-intern the name is unknown.
  CHECK_THROWS_AS(parse_formula("(s4_1_3 x1 x2 x3 x4)", env), ParseError);
  const FormulaPtr phi =
      parse_formula("(i2 x1 (s2_0_2 x2 x2))", env, /*auto_intern=*/true);
  CHECK(env.find("i2") != nullptr);
  CHECK(env.find("s2_0_2") != nullptr);
  CHECK(eval(phi, TernaryTuple({1, 1})) == 1);
  CHECK(eval(phi, TernaryTuple({1, 2})) == 0);  // s2_0_2(2,2) = 0
}

TEST_CASE("generator sets reject claiming a name with new semantics") {
  GeneratorSet env;
  env.add(elf(2, 1));
  CHECK(env.add(elf(2, 1)) != nullptr);  // identical re-add is fine
  const GeneratorPtr impostor = make_generator(
      "s2_1_1", GeneratorSymbol::Semantics(SymmetricRFunction::all_of(2)));
  CHECK_THROWS_AS(env.add(impostor), std::invalid_argument);
}

TEST_CASE("compiled formulas expose subterm values") {
  const GeneratorPtr g = elf(2, 1);
  const FormulaPtr inner = Formula::apply(g, {Formula::var(1), Formula::var(2)});
  const FormulaPtr phi = Formula::apply(g, {inner, Formula::var(1)});
  const CompiledFormula compiled(phi);
  CompiledFormula::Scratch scratch;
  const std::vector<Value> point = {1, 2};
  compiled.eval_all(point, scratch);
  CHECK(compiled.value_of(inner, scratch) == 0);   // (1,2) hits the layer
  CHECK(compiled.value_of(phi, scratch) == 0);     // 0 argument propagates
  const std::vector<Value> ones = {1, 1};
  compiled.eval_all(ones, scratch);
  CHECK(compiled.value_of(inner, scratch) == 1);
  CHECK(compiled.value_of(phi, scratch) == 1);  // (1,1) misses the layer
}

TEST_CASE("deep argument chains are destroyed without overflowing the stack") {
  const GeneratorPtr g = elf(1, 0);
  FormulaPtr phi = Formula::var(1);
  for (int i = 0; i < 200000; ++i) phi = Formula::apply(g, {phi});
  CHECK(depth(phi) == 200000);
  phi.reset();  // must not crash
}
