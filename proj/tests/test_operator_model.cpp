#include <vector>

#include "afree/dsl.hpp"
#include "afree/polynomial.hpp"
#include "doctest.h"
#include "test_support.hpp"

using namespace afree;

TEST_CASE("single scalar equation with mixed orders") {
  const auto op = parse_operator("D[1,0] u1 + D[0,1] u1 + D[0,2] u1 = 0");
  CHECK(op.d() == 2);
  CHECK(op.m() == 1);
  CHECK(op.n() == 1);
  const auto& terms = op.equation(0).terms;
  REQUIRE(terms.size() == 3);
  CHECK(terms.count(MultiIndex({1, 0})) == 1);
  CHECK(terms.count(MultiIndex({0, 1})) == 1);
  CHECK(terms.count(MultiIndex({0, 2})) == 1);
  for (const auto& [a, coeff] : terms) {
    REQUIRE(coeff.size() == 1);
    CHECK(coeff[0].is_constant(1));
  }
}

TEST_CASE("two components sharing a derivative share one coefficient vector") {
  const auto op = parse_operator("D[1,0] u1 + D[1,0] u2 = 0");
  CHECK(op.d() == 2);
  CHECK(op.m() == 2);
  const auto& terms = op.equation(0).terms;
  REQUIRE(terms.size() == 1);
  const auto& coeff = terms.at(MultiIndex({1, 0}));
  REQUIRE(coeff.size() == 2);
  CHECK(coeff[0].is_constant(1));
  CHECK(coeff[1].is_constant(1));
}

TEST_CASE("polynomial coefficient attaches to the right component") {
  const auto op = parse_operator("(x1^2+1) * D[2,0,0] u3 = 0");
  CHECK(op.d() == 3);
  CHECK(op.m() == 3);
  const auto& coeff = op.equation(0).terms.at(MultiIndex({2, 0, 0}));
  CHECK(coeff[0].zero());
  CHECK(coeff[1].zero());
  PolyCoefficient want(3);
  want.add_term(MultiIndex({2, 0, 0}), 1);
  want.add_term(MultiIndex::zeros(3), 1);
  CHECK(coeff[2] == want);
}

TEST_CASE("dims declaration, comments, rationals, repeated terms") {
  const auto op = parse_operator(
      "# transport with a twist\n"
      "dims 2;\n"
      "1/2 * D[1,0] u1 + 1/2 * D[1,0] u1 - (x2) * D[0,1] u1 = 0;\n");
  const auto& terms = op.equation(0).terms;
  REQUIRE(terms.size() == 2);
  CHECK(terms.at(MultiIndex({1, 0}))[0].is_constant(1));
  PolyCoefficient want(2);
  want.add_term(MultiIndex({0, 1}), -1);
  CHECK(terms.at(MultiIndex({0, 1}))[0] == want);
}

TEST_CASE("parse errors carry positions and reasons") {
  CHECK_THROWS_AS(parse_operator("D[1,0] u1 + D[1,0,0] u1 = 0"), ParseError);
  CHECK_THROWS_AS(parse_operator("D[1,-1] u1 = 0"), ParseError);
  CHECK_THROWS_AS(parse_operator("(x3) * D[1,0] u1 = 0"), ParseError);
  CHECK_THROWS_AS(parse_operator("D[1,0] u0 = 0"), ParseError);
  CHECK_THROWS_AS(parse_operator("D[1,0] u1 = 1"), ParseError);
  CHECK_THROWS_AS(parse_operator("D[1,0] u1 - D[1,0] u1 = 0"), ParseError);
  CHECK_THROWS_AS(parse_operator(""), ParseError);
  CHECK_THROWS_AS(parse_operator("1/0 * D[1,0] u1 = 0"), ParseError);
  try {
    parse_operator("dims 2;\nD[1,0] u1 +\n  D[0,-2] u1 = 0;");
    CHECK(false);
  } catch (const ParseError& e) {
    CHECK(e.line == 3);
    CHECK(std::string(e.what()).find("negative exponent") != std::string::npos);
  }
}

TEST_CASE("coefficient evaluation at points") {
  const auto op = parse_operator("(x1^2+1) * D[2,0] u1 + (x1*x2) * D[0,1] u1 = 0");
  const auto& terms = op.equation(0).terms;
  Eigen::VectorXd x(2);
  x << 2.0, 0.0;
  CHECK(terms.at(MultiIndex({2, 0}))[0].eval(x) == doctest::Approx(5.0).epsilon(1e-15));
  x << 3.0, -1.0;
  CHECK(terms.at(MultiIndex({0, 1}))[0].eval(x) == doctest::Approx(-3.0).epsilon(1e-15));
  CHECK(PolyCoefficient::constant(2, 1).eval(x) == 1.0);
  CHECK(terms.at(MultiIndex({2, 0}))[0].eval_exact({Rational(2), Rational(0)}) == Rational(5));
}

TEST_CASE("multi-index ordering and domination") {
  const MultiIndex a({1, 0}), b({0, 2}), c({1, 1});
  CHECK(a.dominated_by(c));
  CHECK(!c.dominated_by(a));
  CHECK(!a.dominated_by(b));
  CHECK(!b.dominated_by(a));
  CHECK(!a.dominated_by(a));
  CHECK(a.leq(a));
  CHECK((a + b) == MultiIndex({1, 2}));
  CHECK(MultiIndex({1, 2}).order() == 3);
  CHECK_THROWS_AS(MultiIndex({1, -1}), Error);
}

TEST_CASE("serialize then reparse is the identity on random systems") {
  Rng rng(20240817);
  for (int trial = 0; trial < 60; ++trial) {
    const OperatorSystem op = testing::random_operator(rng, 4, 3);
    const std::string text = serialize_operator(op);
    CAPTURE(text);
    const OperatorSystem back = parse_operator(text);
    CHECK(back == op);
    CHECK(serialize_operator(back) == text);
  }
}

TEST_CASE("serialized form is stable for the mixed-order example") {
  const auto op = parse_operator("D[0,2] u1 + D[1,0] u1 + D[0,1] u1 = 0");
  CHECK(serialize_operator(op) ==
        "dims 2;\n"
        "D[0,1] u1 + D[0,2] u1 + D[1,0] u1 = 0;\n");
}
