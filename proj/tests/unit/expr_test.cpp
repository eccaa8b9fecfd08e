#include <doctest.h>

#include "common/test_theories.hpp"

using namespace kvn;
using kvn_test::canonical1;
using kvn_test::kvn1;

TEST_SUITE_BEGIN("fast");

TEST_CASE("multiplication preserves written factor order") {
  auto f = canonical1();
  Expr qp = f("q*p");
  Expr pq = f("p*q");
  CHECK(qp.terms().size() == 1);
  CHECK_FALSE(qp == pq);
  CHECK(qp - pq == f("q*p - p*q"));
  CHECK(f("q*p - p*q").terms().size() == 2);
}

TEST_CASE("underline identifies the commutative projection") {
  auto f = canonical1();
  // qp != pq as operators, but their underlines agree.
  CHECK(underline(f("q*p - p*q")).is_zero());
  CHECK(underline(f("q*p")) == underline(f("p*q")));
  CHECK(underline(f("q^2 + p")) == f("q^2 + p"));
}

TEST_CASE("underline is total on hbar-carrying input") {
  auto f = canonical1();
  Expr e = f("i*hbar*p*q");
  Expr u = underline(e);
  CHECK(u == f("i*hbar*q*p"));
  CHECK_FALSE(u.hbar_free());
}

TEST_CASE("partial projection moves only the chosen dofs") {
  auto f = kvn_test::partial2();
  Expr e = f("p_2*q_1*q_2");  // q_1 commutes with everything, q_2/p_2 do not
  Expr proj = underline_in(e, [](int dof) { return dof == 1; });
  CHECK(proj == f("q_1*p_2*q_2"));
  CHECK_FALSE(proj == f("q_1*q_2*p_2"));
}

TEST_CASE("hbar_term extracts one power with the power stripped") {
  auto f = canonical1();
  Expr e = f("4*q*p - 2*i*hbar");
  CHECK(e.hbar_term(0) == f("4*q*p"));
  CHECK(e.hbar_term(1) == f("-2*i"));
  CHECK(f("q").hbar_term(2).is_zero());
}

TEST_CASE("formal derivative and substitution act on commutative images") {
  auto f = canonical1();
  CHECK(formal_derivative(f("q^2*p"), Symbol::position(1)) == f("2*q*p"));
  CHECK(formal_derivative(f("q"), Symbol::momentum(1)).is_zero());
  Expr shifted = substitute(f("q^2"), Symbol::position(1), f("q + eps"));
  CHECK(shifted == f("q^2 + 2*eps*q + eps^2"));
}

TEST_CASE("division closes over parameters with negative powers") {
  auto f = canonical1();
  Expr e = f("p^2/(2*m)");
  CHECK(e * f("2*m") == f("p^2"));
  CHECK_THROWS_AS(f("1").divided_by(f("q")), Error);
}

TEST_CASE("printing round-trips through the parser") {
  auto f = kvn1();
  for (const char* text :
       {"p^2/(2*m) + (k/2)*q^2", "q*p - p*q", "p~*p/m + k*q*q~",
        "-3/2*i*hbar^2*q^2 + p~", "(1+2*i)*q"}) {
    Expr e = f(text);
    Expr round = f(f.scope.render(e));
    CHECK(round == e);
  }
}

TEST_CASE("scalar-like expressions expose their scalar") {
  auto f = canonical1();
  CHECK(f("3/4").as_scalar() == Scalar(CRational(Rational(3, 4))));
  CHECK_THROWS_AS(f("q").as_scalar(), Error);
}

TEST_SUITE_END();
