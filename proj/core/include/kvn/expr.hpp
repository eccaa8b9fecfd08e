#pragma once

#include <functional>
#include <set>
#include <string>
#include <vector>

#include "kvn/scalar.hpp"
#include "kvn/symbol.hpp"

namespace kvn {

// One scalar-weighted ordered monomial. Central parameters are kept apart
// from the operator factors: they carry integer powers of either sign (the
// DSL closes under division by parameters), while operator factors form a
// flat sequence whose order is the multiplication order as written.
struct Term {
  Scalar coeff;
  std::vector<std::pair<Symbol, int>> params;  // sorted, nonzero powers
  std::vector<Symbol> ops;                     // ordered, repeats = powers

  int degree() const { return static_cast<int>(ops.size()); }
  bool scalar_like() const { return ops.empty() && params.empty(); }

  friend bool operator==(const Term&, const Term&) = default;
};

// A finite sum of Terms. Exprs are immutable values in free-algebra normal
// form: terms sorted by factor sequence, equal factor sequences merged,
// zero terms dropped. Multiplication never applies commutation relations;
// `normal_form` (relations.hpp) does that under an explicit table, and
// `underline` projects onto the commutative image. Both q*p - p*q and its
// normal form are therefore representable and distinct.
class Expr {
 public:
  Expr() = default;
  explicit Expr(Scalar s);
  explicit Expr(const Symbol& s);
  static Expr zero() { return {}; }
  static Expr one() { return Expr(Scalar(1)); }
  static Expr scalar(Scalar s) { return Expr(std::move(s)); }
  static Expr symbol(const Symbol& s) { return Expr(s); }
  static Expr from_terms(std::vector<Term> terms);

  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_scalar() const {
    return terms_.empty() || (terms_.size() == 1 && terms_[0].scalar_like());
  }
  Scalar as_scalar() const;

  int degree() const;
  bool hbar_free() const;
  bool contains(const Symbol& s) const;
  bool contains_tilde() const;
  std::set<Symbol> symbols() const;      // operator symbols only
  std::set<Symbol> all_symbols() const;  // including parameters
  std::set<int> dofs() const;

  Expr operator-() const;
  friend Expr operator+(const Expr& a, const Expr& b);
  friend Expr operator-(const Expr& a, const Expr& b);
  friend Expr operator*(const Expr& a, const Expr& b);
  Expr& operator+=(const Expr& o) { return *this = *this + o; }
  Expr& operator-=(const Expr& o) { return *this = *this - o; }
  Expr& operator*=(const Expr& o) { return *this = *this * o; }
  friend Expr operator*(const Scalar& s, const Expr& e);
  friend bool operator==(const Expr& a, const Expr& b) = default;

  // Division by an invertible factor: a single hbar-free term with no
  // operator symbols (scalars and central parameter monomials).
  Expr divided_by(const Expr& divisor) const;

  Expr pow(int exponent) const;  // exponent >= 0

  // Sum of terms carrying exactly hbar^k, with hbar^k stripped.
  Expr hbar_term(int k) const;

  std::string str(
      const std::function<std::string(const Symbol&)>& name = {}) const;

 private:
  void canonicalize();
  std::vector<Term> terms_;
};

// Commutative projection: every operator factor commutes with every other;
// each monomial is sorted into the global order. Total on any Expr (formal
// hbar passes through untouched).
Expr underline(const Expr& e);

// Per-degree-of-freedom projection: only operator symbols whose dof
// satisfies `mobile` are set to commute (they then commute with *all*
// factors); the remaining factors keep their relative order. Tilde symbols
// in the input are rejected: the projection is defined on expressions in
// the original variables.
Expr underline_in(const Expr& e, const std::function<bool(int dof)>& mobile);

// Formal commutative derivative with respect to one operator symbol: the
// sum over occurrences with that occurrence removed. Matches the bracket
// derivative on commutative images.
Expr formal_derivative(const Expr& e, const Symbol& s);

// Replace every occurrence of `s` by `value` (distributing products).
Expr substitute(const Expr& e, const Symbol& s, const Expr& value);

}  // namespace kvn
