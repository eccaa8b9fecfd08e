#pragma once

#include <string>
#include <vector>

#include "kvn/operator_rep.hpp"

namespace kvn {

struct Observable {
  std::string name;
  enum Kind { Expectation, Uncertainty, BracketRhs } kind = Expectation;
  Expr expr;      // Expectation: as given; BracketRhs: [[expr, H~]] is recorded
  Symbol symbol;  // Uncertainty only
};

struct EvolveOptions {
  double dt = 1e-3;
  long steps = 0;
  std::vector<Observable> observables;
  double norm_abort = 1e-6;  // evolution aborts beyond this drift
};

// Time series of recorded observables at a fixed step. Column 0 is the
// norm; observables follow in option order.
struct TrajectoryRecord {
  double dt = 0.0;
  std::vector<std::string> columns;           // includes leading "norm"
  std::vector<double> times;
  std::vector<std::vector<double>> samples;   // one row per time
  double max_norm_drift = 0.0;

  int column(const std::string& name) const;
  const std::vector<double>& row(long i) const { return samples[i]; }
  std::vector<double> series(const std::string& name) const;

  std::string to_csv() const;       // header t,<name>..., 17 significant digits
  std::string to_plot_data() const; // gnuplot-friendly whitespace table
};

// Fixed-step RK4 integration of i hbar d psi/dt = H~ psi with matrix-free
// operator application; records observables every step (including t = 0).
// The state is advanced in place. Aborts with NumericError when the norm
// drifts beyond options.norm_abort.
TrajectoryRecord evolve(StateVector& state, const Expr& H_tilde, GridRep& rep,
                        const EvolveOptions& options);

// Max over interior samples of |centered difference of <u> - <[[u,H~]]>|,
// given the two recorded column names.
double ehrenfest_residual(const TrajectoryRecord& traj,
                          const std::string& value_column,
                          const std::string& rhs_column);

// Default dt from the stability rule dt = 0.5 / ||H~/hbar||_est with the
// norm estimated by 8 power-iteration steps.
double stable_dt(GridRep& rep, const Expr& H_tilde);

void write_text_file(const std::string& path, const std::string& content);

}  // namespace kvn
