#pragma once

#include <optional>
#include <string>
#include <vector>

#include "kvn/deconjugation.hpp"

namespace kvn {

// Heisenberg-picture equation of motion: d/dt var = [[var, H]].
struct EquationOfMotion {
  Symbol var;
  Expr rhs;
};

EquationOfMotion eom(const Symbol& var, const Expr& H, const RelationTable& table);

// The right hand side of qdot for one dof; which momenta appear identifies
// the dynamical momentum.
Expr dynamical_momentum(const Expr& H, int dof, const RelationTable& table);

struct ConservedCheck {
  bool canonical_conserved;
  bool tilde_conserved;
  // True when the quantity is conserved in the deconjugation only: the
  // converse of the propagation theorem fails on this witness.
  bool converse_witness;
};

// Checks [[u, H]] = 0 in the canonical theory and [[u, H~]] = 0 in the
// given deconjugation; enforces that canonical conservation propagates.
ConservedCheck conserved_check(const Expr& u, const Expr& H,
                               const TildeTheory& theory,
                               const Expr& alpha = Expr::zero());

// Decomposition of a non-deconjugated variable's equation of motion into
// its tilde-free part and the parts proportional to each auxiliary symbol.
struct ExtraTermEntry {
  Symbol var;
  Expr base;  // [[var, projected H + alpha]]
  struct TildePart {
    Symbol tilde;
    Expr coefficient;  // bracket factor multiplying the tilde symbol
    Expr contribution; // coefficient combined with the tilde symbol
  };
  std::vector<TildePart> parts;
  Expr full;  // [[var, H~]], equals base + sum of contributions exactly
};

struct ExtraTermReport {
  std::vector<ExtraTermEntry> entries;
};

ExtraTermReport extra_terms(const Expr& H, const TildeTheory& theory,
                            const Expr& alpha = Expr::zero());

// The decoupling choice for a single deconjugated dof d with
// H = c p_d^2 + (canonical sector) + V(q_d, canonical positions):
// alpha = -c p_d^2 makes the auxiliary q~_d obey the homogeneous equation
//   q~ddot_d = -(2c) d^2V/dq_d^2 q~_d,
// certified by composing the q~_d and p~_d equations of motion.
struct AlphaDecoupling {
  bool ok = false;
  std::string reason;       // set when !ok
  Expr alpha;               // -c p_d^2
  Expr qtilde_acceleration; // [[ [[q~_d, H~]], H~ ]]
  Expr qtilde_coefficient;  // -(2c) underline(d^2 V / dq_d^2)
  bool certified = false;   // acceleration == coefficient * q~_d exactly
};

AlphaDecoupling alpha_decoupling(const Expr& H, const TildeTheory& theory);

}  // namespace kvn
