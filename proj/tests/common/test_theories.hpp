#pragma once

// Shared fixtures: standard theories, parsing shortcuts, and the random
// expression sampler used by the property and acceptance suites.

#include <random>
#include <vector>

#include "kvn/dynamics.hpp"
#include "kvn/parser.hpp"

namespace kvn_test {

using namespace kvn;

struct Fixture {
  SymbolScope scope;
  TildeTheory theory;

  Expr operator()(const std::string& text) const { return parse_expr(text, scope); }
  const RelationTable& table() const { return theory.table(); }
};

// One canonical dof with parameters m, k, eps.
inline Fixture canonical1() {
  Fixture f;
  f.scope = SymbolScope::for_dofs(1);
  for (const char* p : {"m", "k", "eps"}) f.scope.declare_parameter(p);
  f.theory = build_theory(1, {});
  return f;
}

// One dof, fully deconjugated.
inline Fixture kvn1() {
  Fixture f;
  f.scope = SymbolScope::for_dofs(1);
  f.scope.declare_tilde(1);
  for (const char* p : {"m", "k", "eps"}) f.scope.declare_parameter(p);
  f.theory = build_theory(1, {1});
  return f;
}

inline Fixture canonical2() {
  Fixture f;
  f.scope = SymbolScope::for_dofs(2);
  for (const char* p : {"m", "m_1", "m_2", "k", "lambda"}) f.scope.declare_parameter(p);
  f.theory = build_theory(2, {});
  return f;
}

inline Fixture kvn2() {
  Fixture f;
  f.scope = SymbolScope::for_dofs(2);
  f.scope.declare_tilde(1);
  f.scope.declare_tilde(2);
  for (const char* p : {"m", "m_1", "m_2", "k", "lambda"}) f.scope.declare_parameter(p);
  f.theory = build_theory(2, {1, 2});
  return f;
}

// Two dofs with only the first deconjugated.
inline Fixture partial2() {
  Fixture f;
  f.scope = SymbolScope::for_dofs(2);
  f.scope.declare_tilde(1);
  for (const char* p : {"m", "m_1", "m_2", "k", "lambda"}) f.scope.declare_parameter(p);
  f.theory = build_theory(2, {1});
  return f;
}

// Random sparse polynomials over a symbol set, exact small coefficients.
class RandomExpr {
 public:
  RandomExpr(std::vector<Symbol> symbols, uint64_t seed)
      : symbols_(std::move(symbols)), rng_(seed) {}

  Expr sample(int max_terms, int max_degree, bool allow_hbar = false) {
    std::uniform_int_distribution<int> nterms(1, max_terms);
    std::uniform_int_distribution<int> degree(0, max_degree);
    std::uniform_int_distribution<int> num(-4, 4);
    std::uniform_int_distribution<int> den(1, 3);
    std::uniform_int_distribution<int> hbar_pow(0, 1);
    std::uniform_int_distribution<size_t> pick(0, symbols_.size() - 1);
    Expr acc;
    const int n = nterms(rng_);
    for (int t = 0; t < n; ++t) {
      int a = num(rng_);
      if (a == 0) a = 1;
      Scalar c(CRational(Rational(a, den(rng_))));
      if (allow_hbar && hbar_pow(rng_) == 1) c = c * Scalar::hbar();
      Expr term = Expr::scalar(c);
      const int d = degree(rng_);
      for (int k = 0; k < d; ++k) term *= Expr(symbols_[pick(rng_)]);
      acc += term;
    }
    return acc;
  }

 private:
  std::vector<Symbol> symbols_;
  std::mt19937_64 rng_;
};

inline std::vector<Symbol> original_symbols(int dofs) {
  std::vector<Symbol> out;
  for (int d = 1; d <= dofs; ++d) {
    out.push_back(Symbol::position(d));
    out.push_back(Symbol::momentum(d));
  }
  return out;
}

inline std::vector<Symbol> theory_symbols(const TildeTheory& th) {
  std::vector<Symbol> out;
  for (int d = 1; d <= th.dof_count(); ++d) {
    out.push_back(Symbol::position(d));
    out.push_back(Symbol::momentum(d));
    if (th.deconjugated(d)) {
      out.push_back(Symbol::tilde_position(d));
      out.push_back(Symbol::tilde_momentum(d));
    }
  }
  return out;
}

}  // namespace kvn_test
