#pragma once

#include "kvn/relations.hpp"

namespace kvn {

// [u, v] = uv - vu, normal ordered under the table.
Expr commutator(const Expr& u, const Expr& v, const RelationTable& table);

// The double bracket [[u, v]] = [u, v] / (i hbar). Exact; fails when the
// commutator is not divisible by i hbar (malformed table).
Expr dbracket(const Expr& u, const Expr& v, const RelationTable& table);

// Bracket-defined derivatives: del_q u = [[u, conjugate-of-q]] and
// del_p u = [[conjugate-of-p, u]]. The axis must be a position or momentum
// with a conjugate in the table (p/p~ for q, q/q~ for p).
Expr partial(const Expr& u, const Symbol& axis, const RelationTable& table);

// McCoy's closed form for the double bracket of polynomials in canonical
// pairs: u and v are brought to canonical order, then
//   [[u, v]] = sum over multi-indices k != 0 of
//              (-i hbar)^(|k|-1) / prod(k_i!) *
//              (d_q^k u d_p^k v - d_q^k v d_p^k u)
// with commutative derivatives and products placed in canonical order.
// Equals dbracket(u, v, canonical table) exactly.
Expr mccoy_bracket(const Expr& u, const Expr& v);

// Finite translation exp(epsilon [[., generator]]) u. Terminates for
// polynomial u; for the canonical table and generator p this is
// u(q + epsilon, p).
Expr translate(const Expr& u, const Symbol& epsilon, const Symbol& generator,
               const RelationTable& table);

}  // namespace kvn
