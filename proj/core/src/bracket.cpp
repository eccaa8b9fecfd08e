#include "kvn/bracket.hpp"

#include <algorithm>
#include <map>
#include <vector>

namespace kvn {

Expr commutator(const Expr& u, const Expr& v, const RelationTable& table) {
  return normal_form(u * v - v * u, table);
}

Expr dbracket(const Expr& u, const Expr& v, const RelationTable& table) {
  Expr c = commutator(u, v, table);
  std::vector<Term> out = c.terms();
  for (auto& t : out) t.coeff = t.coeff.divided_by_i_hbar();
  return Expr::from_terms(std::move(out));
}

Expr partial(const Expr& u, const Symbol& axis, const RelationTable& table) {
  const Symbol* conj = table.conjugate_of(axis);
  if (conj == nullptr)
    throw TheoryError("axis " + axis.default_name(true) +
                      " has no conjugate in this table");
  if (is_position_like(axis.kind())) return dbracket(u, Expr(*conj), table);
  if (is_momentum_like(axis.kind())) return dbracket(Expr(*conj), u, table);
  throw TheoryError("derivative axis must be a position or momentum");
}

namespace {

Rational factorial(int n) {
  Rational f = 1;
  for (int k = 2; k <= n; ++k) f *= k;
  return f;
}

// Canonical (q, p) pairs spanned by an expression's symbols.
std::vector<int> canonical_dofs(const Expr& u, const Expr& v) {
  std::set<int> dofs;
  for (const Expr* e : {&u, &v}) {
    for (const auto& s : e->symbols()) {
      if (s.is_tilde())
        throw TheoryError("McCoy's formula applies to canonical variables");
      dofs.insert(s.dof());
    }
  }
  return {dofs.begin(), dofs.end()};
}

}  // namespace

Expr mccoy_bracket(const Expr& u, const Expr& v) {
  std::vector<int> dofs = canonical_dofs(u, v);

  RelationTable canonical;
  for (int i : dofs)
    for (int j : dofs) {
      if (i < j) {
        canonical.set(Symbol::position(i), Symbol::position(j), Scalar());
        canonical.set(Symbol::position(i), Symbol::momentum(j), Scalar());
        canonical.set(Symbol::momentum(i), Symbol::position(j), Scalar());
        canonical.set(Symbol::momentum(i), Symbol::momentum(j), Scalar());
      }
      if (i == j)
        canonical.set(Symbol::position(i), Symbol::momentum(i), Scalar::i_hbar());
    }

  // Canonically ordered images; central hbar terms ride along unchanged.
  Expr uc = normal_form(u, canonical);
  Expr vc = normal_form(v, canonical);

  int max_order = std::max(uc.degree(), vc.degree());

  Expr acc;
  const Scalar minus_i_hbar = -Scalar::i_hbar();

  // Multi-index expansion: every k != 0 with entries <= max degree
  // contributes (-i hbar)^(|k|-1)/prod k! (d_q^k u d_p^k v - d_q^k v d_p^k u),
  // products taken commutatively and placed in canonical order.
  std::vector<int> k(dofs.size(), 0);
  while (true) {
    // advance odometer
    size_t d = 0;
    while (d < dofs.size()) {
      if (++k[d] <= max_order) break;
      k[d] = 0;
      ++d;
    }
    if (d == dofs.size()) break;

    int total = 0;
    for (int x : k) total += x;

    Expr qu = uc, qv = vc;  // d_q^k u, d_q^k v
    Expr pu = uc, pv = vc;  // d_p^k u, d_p^k v
    Rational denom = 1;
    for (size_t j = 0; j < dofs.size(); ++j) {
      denom *= factorial(k[j]);
      for (int n = 0; n < k[j]; ++n) {
        qu = formal_derivative(qu, Symbol::position(dofs[j]));
        qv = formal_derivative(qv, Symbol::position(dofs[j]));
        pu = formal_derivative(pu, Symbol::momentum(dofs[j]));
        pv = formal_derivative(pv, Symbol::momentum(dofs[j]));
      }
    }
    if ((qu.is_zero() || pv.is_zero()) && (qv.is_zero() || pu.is_zero()))
      continue;

    Scalar weight = Scalar(CRational(Rational(1) / denom));
    for (int n = 0; n < total - 1; ++n) weight = weight * minus_i_hbar;

    Expr piece = underline(qu * pv) - underline(qv * pu);
    acc += weight * piece;
  }
  return acc;
}

Expr translate(const Expr& u, const Symbol& epsilon, const Symbol& generator,
               const RelationTable& table) {
  if (!epsilon.is_parameter())
    throw TheoryError("translation step must be a parameter");
  Expr acc = u;
  Expr current = u;
  Expr eps(epsilon);
  Rational kfact = 1;
  int guard = u.degree() + 2;
  for (int n = 1; n <= guard; ++n) {
    current = dbracket(current, Expr(generator), table);
    if (current.is_zero()) return acc;
    kfact *= n;
    acc += Expr::scalar(Scalar(CRational(Rational(1) / kfact))) * eps.pow(n) * current;
  }
  throw TheoryError("translation series does not terminate for this input");
}

}  // namespace kvn
