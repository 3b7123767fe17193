#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "dsl.hpp"
#include "errors.hpp"
#include "support.hpp"

using namespace vfl;
using vfl::testing::random_field;

TEST_CASE("parse basic fields") {
  VectorField v = parse_field("x^2*Dx", 1);
  CHECK(v == VectorField::along(0, CoeffFn::monomial(1, {2})));
  CHECK(print_field(v) == "x^2*Dx");

  VectorField w = parse_field("(3/2)*x*y*Dx - i*Dy", 2);
  CHECK(w[0] == CoeffFn::monomial(2, {1, 1}, Scalar::rational(3, 2)));
  CHECK(w[1] == CoeffFn::constant(2, -Scalar::imag_unit()));
  CHECK(print_field(w) == "3/2*x*y*Dx - i*Dy");

  VectorField e = parse_field("exp(2*x)*Dy + exp(-x)*Dx", 2);
  CHECK(e[0] == CoeffFn::exponential(2, {Scalar(-1), Scalar(0)}));
  CHECK(e[1] == CoeffFn::exponential(2, {Scalar(2), Scalar(0)}));
  CHECK(print_field(e) == "exp(-x)*Dx + exp(2*x)*Dy");
}

TEST_CASE("printer forms") {
  CHECK(print_field(VectorField(2)) == "0");
  CHECK(print_field(parse_field("-x^2*Dx", 1)) == "-x^2*Dx");
  CHECK(print_field(parse_field("(1+i)*x*Dx", 1)) == "(1+i)*x*Dx");
  CHECK(print_field(parse_field("x2*x4*Dx3", 4)) == "x2*x4*Dx3");
  CHECK(print_field(parse_field("x*(x + 1)*Dx", 1)) == "x^2*Dx + x*Dx");
  CHECK(print_function(parse_function("exp(x - y) - 1", 2)) == "exp(x - y) - 1");
  CHECK(print_point(Point{Scalar(0), Scalar::rational(-1, 2)}) == "(0, -1/2)");
}

TEST_CASE("parse errors carry position") {
  try {
    parse_field("x^2*", 1, 3);
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
    CHECK(e.column() == 5);
  }
  CHECK_THROWS_AS(parse_field("Dx*Dx", 1), ParseError);
  CHECK_THROWS_AS(parse_field("x + Dx", 1), ParseError);
  CHECK_THROWS_AS(parse_field("y*Dx", 1), ParseError);
  CHECK_THROWS_AS(parse_field("exp(x^2)*Dx", 1), ParseError);
  CHECK_THROWS_AS(parse_field("x $ Dx", 1), ParseError);
  CHECK_THROWS_AS(parse_field("1/0*Dx", 1), ParseError);
}

TEST_CASE("field lines") {
  auto fs = parse_field_lines("# header\nDx\n\n  x*Dx  # trailing\n", 1);
  REQUIRE(fs.size() == 2);
  CHECK(print_field(fs[1]) == "x*Dx");
}

TEST_CASE("print then parse is the identity") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t dim = 1 + trial % 5;
    VectorField v = random_field(rng, dim);
    CHECK(parse_field(print_field(v), dim) == v);
  }
}
