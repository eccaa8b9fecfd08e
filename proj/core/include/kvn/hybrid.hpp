#pragma once

#include <map>
#include <string>

#include "kvn/dynamics.hpp"
#include "kvn/meanfield.hpp"

namespace kvn {

// One quantum-classical hybrid run: dof 1 deconjugated (KvN/classical) on a
// (q1, p1) plane, dof 2 canonical (quantum) on a q2 axis.
struct HybridConfig {
  Expr H;                    // c1 p1^2 + c2 p2^2 + V(q1, q2)
  TildeTheory theory;        // 2 dofs, subset {1}
  std::map<std::string, double> params;
  double hbar = 1.0;
  PhaseGrid grid;            // axes for q1, p1, q2
  GaussianAxis q1_state;     // pgrad fields are derived, not read
  GaussianAxis p1_state;
  GaussianAxis q2_state;     // pgrad honored (initial <p_2>)
  Expr alpha;                // alpha_H entering H~
  bool zero_tilde = true;    // initial <q~_1> = <q~dot_1> = 0
  double qtilde_offset = 0.5;  // initial <q~_1> when zero_tilde is false
  double dt = 0.0;           // <= 0: stability rule
  double t_final = 5.0;
};

struct HybridResult {
  Expr H_tilde;
  double dt = 0.0;
  TrajectoryRecord kvn;        // columns E[q_1], E[p_1], E[q_2], E[p_2], E[q~_1], rhs[p_2]
  TrajectoryRecord reference;  // factorized classical-quantum oracle
};

// Evolves the KvN wavefunction psi(q1, p1, q2) under H~ with the given
// alpha and the paired factorized reference. zero_tilde selects a state
// with uniform phase along p1 (so <q~_1> = 0) and phase p1-center q1 / hbar
// along q1 (so <p~_1> = <p_1> and the auxiliary velocity vanishes);
// otherwise a p1-phase gradient sets <q~_1> = qtilde_offset.
HybridResult hybrid_simulate(const HybridConfig& config);

}  // namespace kvn
