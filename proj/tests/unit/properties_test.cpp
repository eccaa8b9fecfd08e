#include <doctest.h>

#include "common/test_theories.hpp"

using namespace kvn;
using kvn_test::RandomExpr;

TEST_SUITE_BEGIN("fast");

namespace {

struct TableCase {
  const char* name;
  kvn_test::Fixture fixture;
  std::vector<Symbol> symbols;
};

std::vector<TableCase> table_cases() {
  std::vector<TableCase> cases;
  cases.push_back({"canonical", kvn_test::canonical1(),
                   kvn_test::theory_symbols(build_theory(1, {}))});
  cases.push_back({"deconjugated", kvn_test::kvn1(),
                   kvn_test::theory_symbols(build_theory(1, {1}))});
  cases.push_back({"partial", kvn_test::partial2(),
                   kvn_test::theory_symbols(build_theory(2, {1}))});
  return cases;
}

}  // namespace

TEST_CASE("normal form is idempotent on random expressions") {
  for (auto& tc : table_cases()) {
    CAPTURE(tc.name);
    RandomExpr gen(tc.symbols, 0xA0);
    for (int it = 0; it < 60; ++it) {
      Expr e = gen.sample(4, 5, true);
      Expr nf = normal_form(e, tc.fixture.table());
      CHECK(normal_form(nf, tc.fixture.table()) == nf);
    }
  }
}

TEST_CASE("ring laws hold exactly") {
  RandomExpr gen(kvn_test::original_symbols(2), 0xA1);
  for (int it = 0; it < 60; ++it) {
    Expr a = gen.sample(3, 3, true);
    Expr b = gen.sample(3, 3, true);
    Expr c = gen.sample(3, 3, true);
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
    CHECK((a + b) * c == a * c + b * c);
  }
}

TEST_CASE("underline is a homomorphism onto the commutative ring") {
  RandomExpr gen(kvn_test::original_symbols(2), 0xA2);
  for (int it = 0; it < 60; ++it) {
    Expr a = gen.sample(3, 3);
    Expr b = gen.sample(3, 3);
    CHECK(underline(a * b) == underline(underline(a) * underline(b)));
    CHECK(underline(a + b) == underline(a) + underline(b));
  }
}

TEST_CASE("vanishing operators have vanishing underlines, never conversely") {
  auto c = kvn_test::canonical1();
  RandomExpr gen(kvn_test::original_symbols(1), 0xA3);
  for (int it = 0; it < 40; ++it) {
    Expr e = gen.sample(3, 4, true);
    // e - normal_form(e) is the zero operator by construction.
    Expr zero_op = e - normal_form(e, c.table());
    CHECK(underline(zero_op).is_zero());
  }
  // The converse fails on the standard witness.
  Expr witness = c("q*p - p*q");
  CHECK(underline(witness).is_zero());
  CHECK_FALSE(normal_form(witness, c.table()).is_zero());
}

TEST_CASE("underline of hbar-free input equals commutified hbar^0 normal form") {
  auto c = kvn_test::canonical1();
  RandomExpr gen(kvn_test::original_symbols(1), 0xA4);
  for (int it = 0; it < 40; ++it) {
    Expr e = gen.sample(3, 4, false);
    REQUIRE(e.hbar_free());
    Expr route_a = underline(e);
    Expr route_b = underline(normal_form(e, c.table()).hbar_term(0));
    CHECK(route_a == route_b);
  }
}

TEST_CASE("bracket axioms on sampled triples, all table types") {
  for (auto& tc : table_cases()) {
    CAPTURE(tc.name);
    const RelationTable& table = tc.fixture.table();
    RandomExpr gen(tc.symbols, 0xA5);
    for (int it = 0; it < 40; ++it) {
      Expr u = gen.sample(3, 3);
      Expr v = gen.sample(3, 3);
      Expr w = gen.sample(3, 3);
      CHECK((dbracket(u, v, table) + dbracket(v, u, table)).is_zero());
      CHECK(dbracket(u + v, w, table) ==
            dbracket(u, w, table) + dbracket(v, w, table));
      CHECK(normal_form(dbracket(u * v, w, table) -
                            dbracket(u, w, table) * v - u * dbracket(v, w, table),
                        table)
                .is_zero());
      CHECK(normal_form(dbracket(dbracket(u, v, table), w, table) -
                            dbracket(dbracket(u, w, table), v, table) -
                            dbracket(u, dbracket(v, w, table), table),
                        table)
                .is_zero());
      CHECK(dbracket(u, Expr::scalar(Scalar(CRational(Rational(7, 3)))), table)
                .is_zero());
    }
  }
}

TEST_CASE("McCoy equivalence on random polynomial pairs") {
  auto c = kvn_test::canonical1();
  RandomExpr gen(kvn_test::original_symbols(1), 0xA6);
  for (int it = 0; it < 50; ++it) {
    Expr u = gen.sample(3, 4);
    Expr v = gen.sample(3, 4);
    CHECK(mccoy_bracket(u, v) == dbracket(u, v, c.table()));
  }
}

TEST_CASE("KvN extraction: underlined hbar^0 of McCoy is the tilde bracket") {
  auto d = kvn_test::kvn1();
  RandomExpr gen(kvn_test::original_symbols(1), 0xA7);
  RandomExpr alpha_gen(kvn_test::original_symbols(1), 0xA8);
  for (int it = 0; it < 50; ++it) {
    Expr u = gen.sample(3, 4);
    Expr v = gen.sample(3, 4);
    Expr alpha = underline(alpha_gen.sample(2, 2));
    Expr lhs = underline(mccoy_bracket(u, v).hbar_term(0));
    Expr rhs = dbracket(u,
                        tilde_image(v, d.theory, alpha), d.theory.table());
    CHECK(lhs == rhs);
  }
}

TEST_CASE("Poisson correspondence and its alpha independence") {
  auto d = kvn_test::kvn1();
  RandomExpr gen(kvn_test::original_symbols(1), 0xA9);
  const Symbol q = Symbol::position(1), p = Symbol::momentum(1);
  for (int it = 0; it < 40; ++it) {
    Expr u = underline(gen.sample(3, 3));
    Expr v = underline(gen.sample(3, 3));
    Expr alpha = underline(gen.sample(2, 2));
    Expr poisson = underline(formal_derivative(u, q) * formal_derivative(v, p) -
                             formal_derivative(v, q) * formal_derivative(u, p));
    Expr via_v = dbracket(u, tilde_image(v, d.theory, alpha), d.theory.table());
    Expr via_u = dbracket(tilde_image(u, d.theory, alpha), v, d.theory.table());
    CHECK(via_v == normal_form(poisson, d.theory.table()));
    CHECK(via_u == normal_form(poisson, d.theory.table()));
  }
}

TEST_CASE("the tilde conjugates act as projected derivatives") {
  auto d = kvn_test::kvn1();
  RandomExpr gen(kvn_test::original_symbols(1), 0xAA);
  for (int it = 0; it < 40; ++it) {
    Expr u = gen.sample(3, 3);
    Expr lhs_q = dbracket(u, Expr(Symbol::tilde_momentum(1)), d.theory.table());
    Expr lhs_p = dbracket(Expr(Symbol::tilde_position(1)), u, d.theory.table());
    CHECK(lhs_q == normal_form(underline(formal_derivative(underline(u), Symbol::position(1))),
                               d.theory.table()));
    CHECK(lhs_p == normal_form(underline(formal_derivative(underline(u), Symbol::momentum(1))),
                               d.theory.table()));
  }
}

TEST_CASE("alpha and tilde-factor ordering drop out of original-variable dynamics") {
  auto d = kvn_test::kvn1();
  RandomExpr gen(kvn_test::original_symbols(1), 0xAB);
  const Expr H = d("p^2/(2*m) + (k/2)*q^2 + q^3");
  for (int it = 0; it < 25; ++it) {
    Expr alpha1 = underline(gen.sample(2, 3));
    Expr alpha2 = underline(gen.sample(2, 3));
    Expr w = gen.sample(3, 3);
    Expr H1 = tilde_hamiltonian(H, d.theory, alpha1);
    Expr H2 = tilde_hamiltonian(H, d.theory, alpha2);
    CHECK(dbracket(w, H1, d.theory.table()) ==
          dbracket(w, H2, d.theory.table()));
  }
  // Swapping p~ . f and f . p~ in H~ leaves every u(q, p) equation alone.
  Expr Ht = tilde_hamiltonian(H, d.theory, Expr::zero());
  Expr dpH = underline(formal_derivative(underline(H), Symbol::momentum(1)));
  Expr flipped = Ht - Expr(Symbol::tilde_momentum(1)) * dpH +
                 dpH * Expr(Symbol::tilde_momentum(1));
  for (int it = 0; it < 25; ++it) {
    Expr w = gen.sample(3, 3);
    CHECK(dbracket(w, Ht, d.theory.table()) ==
          dbracket(w, flipped, d.theory.table()));
  }
}

TEST_CASE("equations of motion of original variables are tilde-free and projected") {
  auto d = kvn_test::kvn1();
  RandomExpr gen(kvn_test::original_symbols(1), 0xAC);
  TildeTheory canonical = build_theory(1, {});
  for (int it = 0; it < 25; ++it) {
    Expr H = gen.sample(3, 4);
    Expr Ht = tilde_hamiltonian(H, d.theory, Expr::zero());
    for (const Symbol& w : {Symbol::position(1), Symbol::momentum(1)}) {
      Expr tilde_rhs = eom(w, Ht, d.theory.table()).rhs;
      CHECK_FALSE(tilde_rhs.contains_tilde());
      Expr original = eom(w, H, canonical.table()).rhs;
      CHECK(tilde_rhs == normal_form(underline(original), d.theory.table()));
    }
  }
}

TEST_SUITE_END();
