#include <stdexcept>
#include <variant>

#include "doctest.h"
#include "tcw/textio.hpp"

using namespace tcw;

TEST_CASE("descriptor lines round-trip through parse and print") {
  const char* lines[] = {
      "sminus1 n=4 e=1 d=3",
      "sminus1 n=2 e=0 d=2",
      "symm n=4 ones=0,4",
      "symm n=2 ones=0,1,2",
      "table n=2 vals=000010001",
      "table n=1 vals=010",
  };
  for (const char* line : lines) {
    const GeneratorSymbol::Semantics f = parse_function_text(line);
    CHECK(function_text(f) == line);
    // A second round trip is the identity as well.
    CHECK(function_text(parse_function_text(function_text(f))) == line);
  }
}

TEST_CASE("descriptor parsing yields the right semantic kind") {
  CHECK(std::holds_alternative<ExcludedLayerFunction>(
      parse_function_text("sminus1 n=3 e=2 d=1")));
  CHECK(std::holds_alternative<SymmetricRFunction>(
      parse_function_text("symm n=3 ones=1,3")));
  CHECK(std::holds_alternative<TernaryFunction>(
      parse_function_text("table n=1 vals=011")));
  const auto f = std::get<ExcludedLayerFunction>(
      parse_function_text("sminus1 n=5 e=2 d=3"));
  CHECK(f.arity == 5);
  CHECK(f.e() == 2);
  CHECK(f.d() == 3);
}

TEST_CASE("descriptor parsing rejects malformed lines") {
  CHECK_THROWS_AS(parse_function_text(""), std::invalid_argument);
  CHECK_THROWS_AS(parse_function_text("mystery n=2"), std::invalid_argument);
  CHECK_THROWS_AS(parse_function_text("sminus1 n=4 e=1 d=2"),
                  std::invalid_argument);  // e + d != n
  CHECK_THROWS_AS(parse_function_text("sminus1 n=4 e=1"),
                  std::invalid_argument);  // missing d
  CHECK_THROWS_AS(parse_function_text("sminus1 n=4 e=1 d=3 x=1"),
                  std::invalid_argument);  // stray field
  CHECK_THROWS_AS(parse_function_text("symm n=2 ones=3"),
                  std::invalid_argument);  // layer out of range
  CHECK_THROWS_AS(parse_function_text("table n=2 vals=0000"),
                  std::invalid_argument);  // wrong length
  CHECK_THROWS_AS(parse_function_text("table n=1 vals=013"),
                  std::invalid_argument);  // bad digit
  CHECK_THROWS_AS(parse_function_text("sminus1 n=four e=1 d=3"),
                  std::invalid_argument);
}

TEST_CASE("family descriptors round-trip and enumerate members") {
  const FamilySpec fe = parse_family_text("family fixed_e=1 start=4 step=1");
  CHECK(family_text(fe) == "family fixed_e=1 start=4 step=1");
  CHECK(fe.known_size() == -1);
  CHECK(fe.member(0).name() == "s4_1_3");
  CHECK(fe.member(2).name() == "s6_1_5");

  // Defaults are filled in and printed explicitly.
  const FamilySpec fd = parse_family_text("family fixed_d=2");
  CHECK(fd.kind == FamilySpec::Kind::FixedD);
  CHECK(fd.member(0).d() == 2);
  CHECK(family_text(parse_family_text(family_text(fd))) == family_text(fd));

  const FamilySpec list = parse_family_text("family list=(2,2);(3,12)");
  CHECK(family_text(list) == "family list=(2,2);(3,12)");
  CHECK(list.known_size() == 2);
  CHECK(list.member(0).name() == "s4_2_2");
  CHECK(list.member(1).name() == "s15_3_12");
  CHECK_THROWS_AS(list.member(2), std::out_of_range);
}

TEST_CASE("family descriptors reject malformed input") {
  CHECK_THROWS_AS(parse_family_text("fixed_e=1"), std::invalid_argument);
  CHECK_THROWS_AS(parse_family_text("family"), std::invalid_argument);
  CHECK_THROWS_AS(parse_family_text("family fixed_e=1 fixed_d=2"),
                  std::invalid_argument);
  CHECK_THROWS_AS(parse_family_text("family fixed_e=-1"),
                  std::invalid_argument);
  CHECK_THROWS_AS(parse_family_text("family list="), std::invalid_argument);
  CHECK_THROWS_AS(parse_family_text("family list=(2;2)"),
                  std::invalid_argument);
  CHECK_THROWS_AS(parse_family_text("family fixed_e=1 step=0"),
                  std::invalid_argument);
  CHECK_THROWS_AS(parse_family_text("family fixed_e=1 start=1"),
                  std::invalid_argument);  // start must exceed the 1-count
}
