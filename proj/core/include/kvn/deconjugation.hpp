#pragma once

#include <set>

#include "kvn/bracket.hpp"
#include "kvn/relations.hpp"

namespace kvn {

// A deconjugation of an n-dof canonical theory. Every dof in `subset`
// trades its canonical relation [[q,p]] = 1 for the doubled pair
//   [[q, p~]] = [[q~, p]] = 1,   [[q, p]] = [[q~, p~]] = 0,
// with all other brackets vanishing; the remaining dofs stay canonical.
class TildeTheory {
 public:
  TildeTheory() = default;

  int dof_count() const { return n_; }
  const std::set<int>& subset() const { return subset_; }
  const RelationTable& table() const { return table_; }

  bool deconjugated(int dof) const { return subset_.count(dof) > 0; }
  bool full() const { return static_cast<int>(subset_.size()) == n_; }
  bool partial() const { return !subset_.empty() && !full(); }

  // Commutative projection used throughout this theory: the deconjugated
  // dofs' variables commute, the canonical dofs keep operator order.
  Expr project(const Expr& e) const;

  friend TildeTheory build_theory(int n, const std::set<int>& subset);

 private:
  int n_ = 0;
  std::set<int> subset_;
  RelationTable table_;
};

TildeTheory build_theory(int n, const std::set<int>& subset);

// The tilde-image of u(q, p):
//   u~ = p~ . underline(del_p u) + underline(del_q u) . q~ + underline(alpha)
// summed per deconjugated dof; u may only touch deconjugated dofs.
Expr tilde_image(const Expr& u, const TildeTheory& theory, const Expr& alpha);

// The generator of time evolution in the deconjugated theory. For full
// deconjugation this is the sum of per-dof tilde-image terms plus alpha.
// For a partial deconjugation the projected Hamiltonian is added so the
// canonical sector keeps evolving; monomials built purely from deconjugated
// momenta are omitted from that slot (their dynamical role is already
// carried by the p~ terms, and keeping them would break the homogeneous
// auxiliary equation that alpha = -p^2/2m buys).
Expr tilde_hamiltonian(const Expr& H, const TildeTheory& theory,
                       const Expr& alpha);

// Legendre transform of a tilde-Hamiltonian: L~ = sum p~ qdot + p q~dot - H~
// with every momentum eliminated through the velocity relations. Velocities
// are emitted as commuting `qdot`/`qtdot` parameters (indexed per dof).
// Throws TheoryError("Legendre transform unavailable ...") when the
// velocity map is not linearly invertible for the momenta.
Expr tilde_lagrangian(const Expr& H_tilde, const TildeTheory& theory);

// The velocity placeholder symbols used by tilde_lagrangian.
Symbol velocity_symbol(const TildeTheory& theory, int dof, bool tilde);

}  // namespace kvn
