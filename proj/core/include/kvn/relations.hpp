#pragma once

#include <map>
#include <set>
#include <utility>

#include "kvn/expr.hpp"

namespace kvn {

// The commutator [a, b] of every covered symbol pair, stored for a < b in
// the global order; [b, a] = -[a, b] is implied. Values are central scalars
// (multiples of i hbar). Parameter pairs default to zero; a non-parameter
// pair that was never declared is an error, not a zero.
class RelationTable {
 public:
  void set(const Symbol& a, const Symbol& b, Scalar commutator);

  Scalar commutator(const Symbol& a, const Symbol& b) const;
  bool covers(const Symbol& s) const;
  void require_coverage(const Expr& e) const;

  // The canonical partner of s: the unique symbol with a nonvanishing
  // commutator against s in this table, or nullptr.
  const Symbol* conjugate_of(const Symbol& s) const;

  const std::set<Symbol>& symbols() const { return symbols_; }

 private:
  std::map<std::pair<Symbol, Symbol>, Scalar> entries_;
  std::set<Symbol> symbols_;
};

// Rewrites e into its canonical form under the table: factors of every
// monomial sorted by the global symbol order, each swap of a noncommuting
// pair inserting the commutator term. Idempotent; exact.
Expr normal_form(const Expr& e, const RelationTable& table);

// Equality of operator expressions under the table.
bool equal_mod(const Expr& a, const Expr& b, const RelationTable& table);

}  // namespace kvn
