#pragma once

#include <vector>

#include "kvn/evolve.hpp"

namespace kvn {

// A real monomial c * q1^a * q2^b of the interaction potential, with
// parameter values folded into c.
struct PolyTerm {
  double c = 0.0;
  int a = 0;
  int b = 0;
};

// Factorized classical-quantum reference dynamics for
//   H = p1^2/(2 m1) + c2 p2^2 + V(q1, q2):
// a classical point (q1, p1) integrated by RK4 under the mean force
// -<dV/dq1>, sourcing the time-dependent potential V(q1(t), q2) for a 1-D
// quantum wavefunction on the q2 axis. The coupled system is advanced as
// one RK4 flow with spectral kinetics.
struct MeanFieldConfig {
  double m1 = 1.0;
  double kinetic_coeff2 = 0.5;  // c2 in c2 p2^2
  std::vector<PolyTerm> potential;
  Axis q2_axis;
  GaussianAxis q2_state;
  double q1_0 = 0.0;
  double p1_0 = 0.0;
  double hbar = 1.0;
  double dt = 1e-3;
  long steps = 0;
};

// Columns: norm, q_1, p_1, E[q_2], E[p_2].
TrajectoryRecord meanfield_reference(const MeanFieldConfig& config);

}  // namespace kvn
