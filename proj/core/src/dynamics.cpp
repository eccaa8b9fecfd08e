#include "kvn/dynamics.hpp"

#include <algorithm>

namespace kvn {

EquationOfMotion eom(const Symbol& var, const Expr& H, const RelationTable& table) {
  return {var, dbracket(Expr(var), H, table)};
}

Expr dynamical_momentum(const Expr& H, int dof, const RelationTable& table) {
  return dbracket(Expr(Symbol::position(dof)), H, table);
}

ConservedCheck conserved_check(const Expr& u, const Expr& H,
                               const TildeTheory& theory, const Expr& alpha) {
  if (u.contains_tilde() || H.contains_tilde())
    throw TheoryError("conservation check takes original variables");
  if (!u.hbar_free() || !H.hbar_free())
    throw TheoryError("conservation check takes hbar-free variables");

  TildeTheory canonical = build_theory(theory.dof_count(), {});
  bool in_canonical = dbracket(u, H, canonical.table()).is_zero();

  Expr H_tilde = tilde_hamiltonian(H, theory, alpha);
  bool in_tilde = dbracket(theory.project(u), H_tilde, theory.table()).is_zero();

  if (in_canonical && !in_tilde)
    throw TheoryError("conservation propagation violated (internal inconsistency)");
  return {in_canonical, in_tilde, in_tilde && !in_canonical};
}

ExtraTermReport extra_terms(const Expr& H, const TildeTheory& theory,
                            const Expr& alpha) {
  if (!theory.partial())
    throw TheoryError("no mixed sector: subset must be proper and nonempty");

  Expr Hc = theory.project(H);

  // The same three groups tilde_hamiltonian is built from.
  struct Group {
    Symbol tilde;
    Expr factor;
    bool tilde_left;
  };
  std::vector<Group> groups;
  Expr slot;  // projected Hamiltonian slot + alpha
  for (int i : theory.subset()) {
    Expr dp = theory.project(formal_derivative(Hc, Symbol::momentum(i)));
    Expr dq = theory.project(formal_derivative(Hc, Symbol::position(i)));
    if (!dp.is_zero()) groups.push_back({Symbol::tilde_momentum(i), dp, true});
    if (!dq.is_zero()) groups.push_back({Symbol::tilde_position(i), dq, false});
  }
  Expr H_tilde = tilde_hamiltonian(H, theory, alpha);
  slot = H_tilde;
  for (const auto& g : groups) {
    Expr term = g.tilde_left ? Expr(g.tilde) * g.factor : g.factor * Expr(g.tilde);
    slot = slot - term;
  }

  ExtraTermReport report;
  for (int j = 1; j <= theory.dof_count(); ++j) {
    if (theory.deconjugated(j)) continue;
    for (const Symbol& w : {Symbol::position(j), Symbol::momentum(j)}) {
      ExtraTermEntry entry;
      entry.var = w;
      entry.base = dbracket(Expr(w), slot, theory.table());
      entry.full = dbracket(Expr(w), H_tilde, theory.table());
      Expr sum = entry.base;
      for (const auto& g : groups) {
        Expr coef = dbracket(Expr(w), g.factor, theory.table());
        Expr contribution =
            normal_form(g.tilde_left ? Expr(g.tilde) * coef : coef * Expr(g.tilde),
                        theory.table());
        if (contribution.is_zero()) continue;
        entry.parts.push_back({g.tilde, coef, contribution});
        sum += contribution;
      }
      if (!(sum == entry.full))
        throw TheoryError("extra-term decomposition failed to reconstruct the rhs");
      report.entries.push_back(std::move(entry));
    }
  }
  return report;
}

AlphaDecoupling alpha_decoupling(const Expr& H, const TildeTheory& theory) {
  if (!theory.partial() || theory.subset().size() != 1)
    throw TheoryError("alpha decoupling needs exactly one deconjugated dof");
  const int d = *theory.subset().begin();

  AlphaDecoupling result;
  auto fail = [&](const std::string& why) {
    result.ok = false;
    result.reason = why;
    return result;
  };

  // Split the projected Hamiltonian: kinetic term in p_d, potential terms
  // containing q_d, and the untouched canonical sector.
  Expr Hc = theory.project(H);
  const Symbol qd = Symbol::position(d);
  const Symbol pd = Symbol::momentum(d);

  std::vector<Term> kinetic, potential;
  for (const auto& t : Hc.terms()) {
    bool has_pd = std::count(t.ops.begin(), t.ops.end(), pd) > 0;
    bool has_qd = std::count(t.ops.begin(), t.ops.end(), qd) > 0;
    bool has_any_momentum = std::any_of(t.ops.begin(), t.ops.end(), [](const Symbol& s) {
      return s.kind() == SymbolKind::Momentum;
    });
    if (has_pd) {
      if (t.ops.size() != 2 || !(t.ops[0] == pd) || !(t.ops[1] == pd))
        return fail("decoupling unavailable: kinetic term is not quadratic in p_" +
                    std::to_string(d));
      kinetic.push_back(t);
    } else if (has_qd) {
      if (has_any_momentum)
        return fail("decoupling unavailable: potential depends on a momentum");
      potential.push_back(t);
    }
  }
  Expr T = Expr::from_terms(kinetic);
  Expr V = Expr::from_terms(potential);
  if (T.is_zero())
    return fail("decoupling unavailable: no p_" + std::to_string(d) +
                "^2 kinetic term");
  if (T.terms().size() != 1)
    return fail("decoupling unavailable: kinetic term is not a single monomial");

  result.alpha = -T;

  Expr H_tilde = tilde_hamiltonian(H, theory, result.alpha);
  Expr qt(Symbol::tilde_position(d));
  Expr velocity = dbracket(qt, H_tilde, theory.table());
  result.qtilde_acceleration = dbracket(velocity, H_tilde, theory.table());

  // Expected homogeneous form: -(2c) d^2V/dq_d^2 q~_d, where T = c p_d^2.
  Term c_term = T.terms()[0];
  c_term.ops.clear();
  Expr two_c = Expr::scalar(Scalar(2)) * Expr::from_terms({c_term});
  Expr v_qq = theory.project(
      formal_derivative(formal_derivative(V, qd), qd));
  result.qtilde_coefficient = -(two_c * v_qq);
  Expr expected = normal_form(result.qtilde_coefficient * qt, theory.table());

  result.certified = (result.qtilde_acceleration == expected);
  if (!result.certified)
    return fail("decoupling unavailable: auxiliary equation is not homogeneous");
  result.ok = true;
  return result;
}

}  // namespace kvn
