#include "kvn/hybrid.hpp"

#include <cmath>

namespace kvn {

namespace {

// Validates the decoupling form and splits H into kinetic coefficients and
// the momentum-free potential.
struct SplitH {
  double c1 = 0.0;  // coefficient of p1^2
  double c2 = 0.0;  // coefficient of p2^2
  std::vector<PolyTerm> potential;
};

SplitH split_hamiltonian(const HybridConfig& config, const GridRep& rep) {
  const Symbol q1 = Symbol::position(1), p1 = Symbol::momentum(1);
  const Symbol q2 = Symbol::position(2), p2 = Symbol::momentum(2);
  SplitH out;
  for (const auto& t : underline(config.H).terms()) {
    int nq1 = 0, nq2 = 0, np1 = 0, np2 = 0;
    for (const auto& s : t.ops) {
      if (s == q1) ++nq1;
      else if (s == q2) ++nq2;
      else if (s == p1) ++np1;
      else if (s == p2) ++np2;
      else throw TheoryError("hybrid Hamiltonian touches an unknown symbol");
    }
    std::complex<double> c = rep.coefficient_value(t);
    if (std::abs(c.imag()) > 0)
      throw TheoryError("hybrid Hamiltonian must have real coefficients");
    if (np1 == 2 && nq1 + nq2 + np2 == 0) {
      out.c1 += c.real();
    } else if (np2 == 2 && nq1 + nq2 + np1 == 0) {
      out.c2 += c.real();
    } else if (np1 == 0 && np2 == 0) {
      out.potential.push_back({c.real(), nq1, nq2});
    } else {
      throw TheoryError(
          "hybrid Hamiltonian must be p1^2/(2 m1) + c p2^2 + V(q1, q2)");
    }
  }
  if (out.c1 <= 0 || out.c2 <= 0)
    throw TheoryError("hybrid Hamiltonian needs positive kinetic terms");
  return out;
}

}  // namespace

HybridResult hybrid_simulate(const HybridConfig& config) {
  if (config.theory.dof_count() != 2 || !config.theory.deconjugated(1) ||
      config.theory.deconjugated(2))
    throw TheoryError("hybrid setup needs dof 1 deconjugated and dof 2 canonical");

  GridRep rep = build_representation(config.theory, config.grid, config.hbar,
                                     config.params);
  SplitH split = split_hamiltonian(config, rep);

  Expr H_tilde = tilde_hamiltonian(config.H, config.theory, config.alpha);

  // Initial state phases: along q1 the gradient <p_1>/hbar ties the
  // conjugate momentum to the dynamical one; along p1 a gradient g sets
  // <q~_1> = -hbar g.
  GaussianAxis q1g = config.q1_state;
  GaussianAxis p1g = config.p1_state;
  GaussianAxis q2g = config.q2_state;
  q1g.pgrad = config.p1_state.center / config.hbar;
  p1g.pgrad = config.zero_tilde ? 0.0 : -config.qtilde_offset / config.hbar;

  std::vector<GaussianAxis> spec(3);
  const Symbol syms[3] = {Symbol::position(1), Symbol::momentum(1),
                          Symbol::position(2)};
  const GaussianAxis* per_symbol[3] = {&q1g, &p1g, &q2g};
  for (int a = 0; a < 3; ++a) {
    int axis = config.grid.axis_of(syms[a]);
    if (axis < 0) throw TheoryError("hybrid grid must carry q1, p1 and q2 axes");
    spec[axis] = *per_symbol[a];
  }
  StateVector state = make_gaussian(config.grid, spec, config.hbar);

  HybridResult result;
  result.H_tilde = H_tilde;
  result.dt = config.dt > 0 ? config.dt : stable_dt(rep, H_tilde);
  long steps = static_cast<long>(std::ceil(config.t_final / result.dt));

  EvolveOptions options;
  options.dt = result.dt;
  options.steps = steps;
  auto expect = [](const std::string& name, const Expr& e) {
    return Observable{name, Observable::Expectation, e, Symbol()};
  };
  options.observables = {
      expect("E[q_1]", Expr(Symbol::position(1))),
      expect("E[p_1]", Expr(Symbol::momentum(1))),
      expect("E[q_2]", Expr(Symbol::position(2))),
      expect("E[p_2]", Expr(Symbol::momentum(2))),
      expect("E[q~_1]", Expr(Symbol::tilde_position(1))),
      Observable{"rhs[p_2]", Observable::BracketRhs, Expr(Symbol::momentum(2)),
                 Symbol()},
  };
  result.kvn = evolve(state, H_tilde, rep, options);

  MeanFieldConfig mf;
  mf.m1 = 1.0 / (2.0 * split.c1);
  mf.kinetic_coeff2 = split.c2;
  mf.potential = split.potential;
  int q2_axis = config.grid.axis_of(Symbol::position(2));
  mf.q2_axis = config.grid.axes()[q2_axis];
  mf.q2_state = q2g;
  mf.q1_0 = config.q1_state.center;
  mf.p1_0 = config.p1_state.center;
  mf.hbar = config.hbar;
  mf.dt = result.dt;
  mf.steps = steps;
  result.reference = meanfield_reference(mf);
  return result;
}

}  // namespace kvn
