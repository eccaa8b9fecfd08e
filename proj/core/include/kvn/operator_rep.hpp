#pragma once

#include <map>
#include <memory>
#include <string>

#include "kvn/deconjugation.hpp"
#include "kvn/fft.hpp"
#include "kvn/grid.hpp"

namespace kvn {

// How one symbol acts on grid states: pointwise multiplication by an axis
// coordinate, or a spectral derivative along an axis with a constant
// prefactor (p~ = -i hbar d/dq, q~ = +i hbar d/dp, canonical
// p = -i hbar d/dq).
struct SymbolAction {
  enum Kind { Diagonal, Spectral } kind = Diagonal;
  int axis = 0;
  std::complex<double> prefactor{1.0, 0.0};  // spectral only
};

// The grid realization of a theory: symbol actions, parameter values, and
// cached transforms. Movable, not copyable (owns FFT plans).
class GridRep {
 public:
  GridRep(TildeTheory theory, PhaseGrid grid, double hbar,
          std::map<std::string, double> parameter_values);
  GridRep(GridRep&&) = default;
  GridRep& operator=(GridRep&&) = default;

  const TildeTheory& theory() const { return theory_; }
  const PhaseGrid& grid() const { return grid_; }
  double hbar() const { return hbar_; }
  const SymbolAction& action(const Symbol& s) const;

  // out = (operator expression) applied to `in`. Runs of equal spectral
  // factors share one transform round trip.
  void apply(const Expr& op, const Field& in, Field& out);

  // <state | op state> by grid quadrature.
  std::complex<double> expectation(const StateVector& state, const Expr& op);

  // sqrt(<s^2> - <s>^2) with a nonnegativity guard; one operator
  // application since every symbol action is Hermitian.
  double uncertainty(const StateVector& state, const Symbol& s);

  // Relative commutator residual ||([a,b] - expected) psi|| / ||psi||.
  double commutator_residual(const StateVector& probe, const Symbol& a,
                             const Symbol& b);

  // Power-iteration estimate (fixed seed, `iters` steps) of the spectral
  // norm of op/hbar, the evolution generator scale that bounds dt.
  double generator_norm_estimate(const Expr& op, int iters = 8);

  std::complex<double> coefficient_value(const Term& t) const;

 private:
  void apply_term(const Term& t, Field& tmp);

  TildeTheory theory_;
  PhaseGrid grid_;
  double hbar_;
  std::map<std::string, double> params_;
  std::map<Symbol, SymbolAction> actions_;
  std::vector<std::vector<double>> coord_full_;  // per axis, full-size
  std::vector<std::vector<double>> wave_full_;   // per axis, full-size
  std::unique_ptr<FftEngine> fft_;
  Field scratch_;
};

// Builds the standard representation over the grid: for a deconjugated dof
// with axes (q, p) both coordinates act diagonally, p~ = -i hbar d/dq and
// q~ = +i hbar d/dp; for a canonical dof with axis q, p = -i hbar d/dq.
// The grid must carry exactly the axes the theory calls for.
GridRep build_representation(const TildeTheory& theory, const PhaseGrid& grid,
                             double hbar,
                             std::map<std::string, double> parameter_values);

std::complex<double> inner_product(const PhaseGrid& grid, const Field& a,
                                   const Field& b);

}  // namespace kvn
