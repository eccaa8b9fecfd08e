#include "kvn/deconjugation.hpp"

#include <algorithm>
#include <vector>

namespace kvn {

TildeTheory build_theory(int n, const std::set<int>& subset) {
  if (n < 1) throw TheoryError("need at least one degree of freedom");
  for (int i : subset)
    if (i < 1 || i > n) throw TheoryError("deconjugated index out of range");

  TildeTheory th;
  th.n_ = n;
  th.subset_ = subset;

  std::vector<Symbol> universe;
  for (int i = 1; i <= n; ++i) {
    universe.push_back(Symbol::position(i));
    universe.push_back(Symbol::momentum(i));
    if (subset.count(i)) {
      universe.push_back(Symbol::tilde_position(i));
      universe.push_back(Symbol::tilde_momentum(i));
    }
  }
  for (size_t a = 0; a < universe.size(); ++a)
    for (size_t b = a + 1; b < universe.size(); ++b)
      th.table_.set(universe[a], universe[b], Scalar());

  for (int i = 1; i <= n; ++i) {
    if (subset.count(i)) {
      th.table_.set(Symbol::position(i), Symbol::tilde_momentum(i), Scalar::i_hbar());
      th.table_.set(Symbol::tilde_position(i), Symbol::momentum(i), Scalar::i_hbar());
    } else {
      th.table_.set(Symbol::position(i), Symbol::momentum(i), Scalar::i_hbar());
    }
  }
  return th;
}

Expr TildeTheory::project(const Expr& e) const {
  return underline_in(e, [this](int dof) { return deconjugated(dof); });
}

namespace {

void require_original(const Expr& e, const char* what) {
  if (e.contains_tilde())
    throw TheoryError(std::string(what) + " must be a function of original variables");
}

// One dof's worth of tilde-image terms, with the stated factor placement:
// p~ on the left of del_p u, q~ on the right of del_q u.
Expr dof_terms(const Expr& u_projected, const TildeTheory& theory, int dof) {
  Expr dp = theory.project(formal_derivative(u_projected, Symbol::momentum(dof)));
  Expr dq = theory.project(formal_derivative(u_projected, Symbol::position(dof)));
  Expr out;
  if (!dp.is_zero()) out += Expr(Symbol::tilde_momentum(dof)) * dp;
  if (!dq.is_zero()) out += dq * Expr(Symbol::tilde_position(dof));
  return out;
}

}  // namespace

Expr tilde_image(const Expr& u, const TildeTheory& theory, const Expr& alpha) {
  require_original(u, "tilde-image argument");
  require_original(alpha, "alpha");
  for (int d : u.dofs())
    if (!theory.deconjugated(d))
      throw TheoryError("tilde-image argument touches a non-deconjugated dof");

  Expr uc = theory.project(u);
  Expr out;
  for (int i : theory.subset()) out += dof_terms(uc, theory, i);
  return out + theory.project(alpha);
}

Expr tilde_hamiltonian(const Expr& H, const TildeTheory& theory,
                       const Expr& alpha) {
  require_original(H, "Hamiltonian");
  require_original(alpha, "alpha");
  for (int d : alpha.dofs())
    if (!theory.deconjugated(d))
      throw TheoryError("alpha touches a non-deconjugated dof");

  Expr Hc = theory.project(H);
  Expr out;
  for (int i : theory.subset()) out += dof_terms(Hc, theory, i);

  if (!theory.full()) {
    // Keep the canonical sector evolving; drop monomials made purely of
    // deconjugated momenta (see header).
    std::vector<Term> kept;
    for (const auto& t : Hc.terms()) {
      bool pure_deconj_momentum =
          !t.ops.empty() &&
          std::all_of(t.ops.begin(), t.ops.end(), [&](const Symbol& s) {
            return s.kind() == SymbolKind::Momentum && theory.deconjugated(s.dof());
          });
      if (!pure_deconj_momentum) kept.push_back(t);
    }
    out += Expr::from_terms(std::move(kept));
  }
  return out + theory.project(alpha);
}

Symbol velocity_symbol(const TildeTheory& theory, int dof, bool tilde) {
  std::string base = tilde ? "qtdot" : "qdot";
  if (theory.dof_count() > 1) base += "_" + std::to_string(dof);
  return Symbol::parameter(base);
}

Expr tilde_lagrangian(const Expr& H_tilde, const TildeTheory& theory) {
  // Unknowns: every momentum-like symbol of the theory.
  std::vector<Symbol> unknowns;
  std::vector<Symbol> coords;   // matching position-like symbols
  std::vector<Symbol> velocities;
  for (int i = 1; i <= theory.dof_count(); ++i) {
    unknowns.push_back(Symbol::momentum(i));
    coords.push_back(Symbol::position(i));
    velocities.push_back(velocity_symbol(theory, i, false));
    if (theory.deconjugated(i)) {
      unknowns.push_back(Symbol::tilde_momentum(i));
      coords.push_back(Symbol::tilde_position(i));
      velocities.push_back(velocity_symbol(theory, i, true));
    }
  }
  const size_t m = unknowns.size();

  // Velocity relations: v_k = [[coord_k, H~]], affine in the unknowns.
  std::vector<std::vector<Expr>> A(m, std::vector<Expr>(m));
  std::vector<Expr> rhs(m);
  for (size_t k = 0; k < m; ++k) {
    Expr vel = underline(dbracket(Expr(coords[k]), H_tilde, theory.table()));
    Expr constant = vel;
    for (size_t j = 0; j < m; ++j) {
      Expr coef = formal_derivative(vel, unknowns[j]);
      for (const auto& u : unknowns)
        if (coef.contains(u))
          throw TheoryError(
              "Legendre transform unavailable: velocity map is nonlinear in the momenta");
      A[k][j] = coef;
      constant = substitute(constant, unknowns[j], Expr::zero());
    }
    rhs[k] = Expr(velocities[k]) - constant;
  }

  // Gauss-Jordan elimination; pivots must be invertible (parameter monomials).
  for (size_t col = 0; col < m; ++col) {
    size_t pivot = col;
    auto invertible = [](const Expr& e) {
      return !e.is_zero() && e.terms().size() == 1 && e.terms()[0].ops.empty() &&
             e.terms()[0].coeff.hbar_free();
    };
    while (pivot < m && !invertible(A[pivot][col])) ++pivot;
    if (pivot == m)
      throw TheoryError("Legendre transform unavailable: velocity map not invertible");
    std::swap(A[col], A[pivot]);
    std::swap(rhs[col], rhs[pivot]);
    Expr inv = Expr::one().divided_by(A[col][col]);
    for (size_t j = col; j < m; ++j) A[col][j] = underline(A[col][j] * inv);
    rhs[col] = underline(rhs[col] * inv);
    for (size_t row = 0; row < m; ++row) {
      if (row == col || A[row][col].is_zero()) continue;
      Expr f = A[row][col];
      for (size_t j = col; j < m; ++j)
        A[row][j] = underline(A[row][j] - f * A[col][j]);
      rhs[row] = underline(rhs[row] - f * rhs[col]);
    }
  }
  // Back-substitute momenta into each other (upper part already reduced to
  // identity by full elimination above), then into the Legendre sum.
  std::vector<Expr> solved = rhs;

  Expr legendre;
  for (size_t k = 0; k < m; ++k) {
    // p~ qdot for positions, p q~dot for tilde positions; commutative here.
    const Symbol& coord = coords[k];
    Symbol momentum = coord.kind() == SymbolKind::Position
                          ? (theory.deconjugated(coord.dof())
                                 ? Symbol::tilde_momentum(coord.dof())
                                 : Symbol::momentum(coord.dof()))
                          : Symbol::momentum(coord.dof());
    legendre += Expr(momentum) * Expr(velocities[k]);
  }
  Expr L = legendre - underline(H_tilde);
  for (size_t j = 0; j < m; ++j) L = substitute(L, unknowns[j], solved[j]);
  return underline(L);
}

}  // namespace kvn
