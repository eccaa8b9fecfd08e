#include <doctest.h>

#include "common/test_theories.hpp"

using namespace kvn;
using kvn_test::canonical1;
using kvn_test::kvn1;

TEST_SUITE_BEGIN("fast");

TEST_CASE("kinetic plus expanded potential") {
  auto f = canonical1();
  // V(q) arrives pre-expanded by the caller.
  Expr e = f("p^2/(2*m) + k*q^2/2 + k*q");
  CHECK(e == f("1/2*p^2/m") + f("1/2*k*q^2") + f("k*q"));
}

TEST_CASE("order of noncommuting products is preserved") {
  auto f = canonical1();
  Expr e = f("q*p - p*q");
  REQUIRE(e.terms().size() == 2);
  CHECK(e.terms()[0].ops == std::vector<Symbol>{Symbol::position(1), Symbol::momentum(1)});
  CHECK(e.terms()[1].ops == std::vector<Symbol>{Symbol::momentum(1), Symbol::position(1)});
}

TEST_CASE("tilde suffix selects the auxiliary conjugates") {
  auto f = kvn1();
  CHECK(f("q~") == Expr(Symbol::tilde_position(1)));
  CHECK(f("p~") == Expr(Symbol::tilde_momentum(1)));
  auto f2 = kvn_test::partial2();
  CHECK(f2("q_1~") == Expr(Symbol::tilde_position(1)));
}

TEST_CASE("reserved names and precedence") {
  auto f = canonical1();
  CHECK(f("i*i") == f("-1"));
  CHECK(f("2*hbar^2") == Expr::scalar(Scalar::hbar(2, CRational(Rational(2)))));
  CHECK(f("-q^2") == -f("q^2"));        // unary minus binds below ^
  CHECK(f("3/2*q") == f("(3/2)*q"));    // left-assoc * and /
  CHECK(f("1/2/2") == f("1/4"));
}

TEST_CASE("syntax errors carry a position") {
  auto f = canonical1();
  try {
    parse_expr("q + )", f.scope);
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.pos == 4);
  }
  CHECK_THROWS_AS(parse_expr("q +", f.scope), ParseError);
  CHECK_THROWS_AS(parse_expr("q ^ p", f.scope), ParseError);
  CHECK_THROWS_AS(parse_expr("(q", f.scope), ParseError);
}

TEST_CASE("undeclared identifiers are rejected") {
  auto f = canonical1();
  CHECK_THROWS_AS(parse_expr("q + z", f.scope), ParseError);
  CHECK_THROWS_AS(parse_expr("q~", f.scope), ParseError);  // no tilde declared
}

TEST_CASE("division restrictions") {
  auto f = canonical1();
  CHECK_THROWS_AS(parse_expr("q/p", f.scope), ParseError);
  CHECK_THROWS_AS(parse_expr("q/hbar", f.scope), ParseError);
  CHECK_THROWS_AS(parse_expr("1/0", f.scope), ParseError);
  CHECK(f("q/m/2") == f("1/2*q/m"));
}

TEST_SUITE_END();
