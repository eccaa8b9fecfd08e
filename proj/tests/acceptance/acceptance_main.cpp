// Acceptance suite. Runs the full criteria set and prints one PASS/FAIL
// line per criterion; exits nonzero when anything fails.
//
//   kvn_acceptance [symbolic|numerics|hybrid]...
//
// With no arguments every group runs. The numeric groups respect
// KVN_THREADS for worker parallelism.

#include <chrono>
#include <cmath>
#include <cstring>
#include <functional>
#include <iostream>
#include <vector>

#include "common/classical_oracle.hpp"
#include "common/test_theories.hpp"
#include "kvn/evolve.hpp"
#include "kvn/hybrid.hpp"
#include "kvn/runner.hpp"

using namespace kvn;
using kvn_test::RandomExpr;

namespace {

int g_failures = 0;

void report(const std::string& id, bool ok, const std::string& detail) {
  std::cout << (ok ? "PASS " : "FAIL ") << id;
  if (!detail.empty()) std::cout << " (" << detail << ")";
  std::cout << "\n" << std::flush;
  if (!ok) ++g_failures;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

// ---------------------------------------------------------------- symbolic

void criterion_1_golden_set() {
  auto t0 = std::chrono::steady_clock::now();

  {  // 1a: two-dof example, conjugate vs dynamical momentum.
    auto c = kvn_test::canonical2();
    Expr H = c("p_1*p_2/m + k*q_1*q_2");
    bool ok = eom(Symbol::position(1), H, c.table()).rhs == c("p_2/m") &&
              eom(Symbol::position(2), H, c.table()).rhs == c("p_1/m") &&
              eom(Symbol::momentum(1), H, c.table()).rhs == c("-k*q_2") &&
              eom(Symbol::momentum(2), H, c.table()).rhs == c("-k*q_1");
    report("1a two-dof equations of motion", ok, "");
  }
  {  // 1b: tilde-Hamiltonian of the simple Hamiltonian, two potentials.
    auto d = kvn_test::kvn1();
    Expr alpha = d("q^2*p");
    bool ok_quadratic =
        tilde_hamiltonian(d("p^2/(2*m) + (k/2)*q^2"), d.theory, alpha) ==
        d("p~*p/m + k*q*q~ + q^2*p");
    bool ok_quartic =
        tilde_hamiltonian(d("p^2/(2*m) + q^4/4"), d.theory, alpha) ==
        d("p~*p/m + q^3*q~ + q^2*p");
    report("1b tilde-Hamiltonian p~ p/m + V'(q) q~ + alpha",
           ok_quadratic && ok_quartic, "");
  }
  {  // 1c: tilde equations of motion with alpha derivatives.
    auto d = kvn_test::kvn1();
    Expr alpha = d("q^2*p");  // d alpha/dp = q^2, d alpha/dq = 2 q p
    Expr Ht = tilde_hamiltonian(d("p^2/(2*m) + (k/2)*q^2"), d.theory, alpha);
    bool ok =
        eom(Symbol::tilde_position(1), Ht, d.table()).rhs == d("p~/m + q^2") &&
        eom(Symbol::tilde_momentum(1), Ht, d.table()).rhs == d("-k*q~ - 2*q*p");
    report("1c tilde equations of motion", ok, "");
  }
  {  // 1d: tilde-Lagrangian of the simple Hamiltonian.
    auto d = kvn_test::kvn1();
    Expr Ht = tilde_hamiltonian(d("p^2/(2*m) + (k/2)*q^2"), d.theory,
                                d("-p^2/(2*m)"));
    Expr L = tilde_lagrangian(Ht, d.theory);
    Expr m(Symbol::parameter("m"));
    Expr qdot(velocity_symbol(d.theory, 1, false));
    Expr qtdot(velocity_symbol(d.theory, 1, true));
    Expr half = Expr::scalar(Scalar(CRational(Rational(1, 2))));
    // L~ = m qdot qtdot - V'(q) q~ - alpha(q, m qdot)
    Expr expected = m * qdot * qtdot - d("k*q*q~") + half * m * qdot * qdot;
    report("1d tilde-Lagrangian", L == underline(expected), "");
  }
  {  // 1e: partial deconjugation equations for two couplings.
    auto p = kvn_test::partial2();
    bool ok = true;
    for (const char* vtext : {"lambda*q_1*q_2", "lambda*q_1^2*q_2"}) {
      Expr H = p(std::string("p_1^2/(2*m_1) + p_2^2/(2*m_2) + ") + vtext);
      ExtraTermReport r = extra_terms(H, p.theory);
      Expr V = p(vtext);
      Expr dq2V = underline(formal_derivative(V, Symbol::position(2)));
      Expr cross = underline(formal_derivative(
          formal_derivative(V, Symbol::position(2)), Symbol::position(1)));
      Expr expected_p2 = normal_form(
          -dq2V - cross * Expr(Symbol::tilde_position(1)), p.table());
      ok = ok && r.entries[0].var == Symbol::position(2) &&
           r.entries[0].full == p("p_2/m_2") &&
           r.entries[1].full == expected_p2;
    }
    report("1e partial-deconjugation quantum-sector equations", ok, "");
  }
  {  // 1f: the decoupling alpha and the homogeneous auxiliary equation.
    auto p = kvn_test::partial2();
    Expr H = p("p_1^2/(2*m_1) + p_2^2/(2*m_2) + lambda*q_1*q_2");
    AlphaDecoupling d = alpha_decoupling(H, p.theory);
    bool ok = d.ok && d.alpha == p("-p_1^2/(2*m_1)") && d.certified &&
              d.qtilde_acceleration ==
                  normal_form(d.qtilde_coefficient *
                                  Expr(Symbol::tilde_position(1)),
                              p.table());
    // For the bilinear coupling the auxiliary equation is q~dd = 0.
    ok = ok && d.qtilde_acceleration.is_zero();
    Expr H2 = p("p_1^2/(2*m_1) + p_2^2/(2*m_2) + lambda*q_1^2*q_2");
    AlphaDecoupling d2 = alpha_decoupling(H2, p.theory);
    ok = ok && d2.ok && d2.certified &&
         d2.qtilde_acceleration ==
             normal_form(p("-2*lambda/m_1") * p("q_2") *
                             Expr(Symbol::tilde_position(1)),
                         p.table());
    report("1f alpha decoupling -p1^2/2m1 with homogeneous q~_1 equation", ok,
           "");
  }
  report("1 symbolic golden set runtime < 1 s", seconds_since(t0) < 1.0,
         fmt(seconds_since(t0)) + " s");
}

void criterion_2_axioms() {
  auto t0 = std::chrono::steady_clock::now();
  struct Case {
    const char* name;
    TildeTheory theory;
  };
  std::vector<Case> cases = {{"canonical", build_theory(1, {})},
                             {"deconjugated", build_theory(1, {1})},
                             {"partial", build_theory(2, {1})}};
  bool ok = true;
  std::string detail;
  for (auto& tc : cases) {
    RandomExpr gen(kvn_test::theory_symbols(tc.theory), 0xACCE97);
    const RelationTable& table = tc.theory.table();
    for (int it = 0; it < 500 && ok; ++it) {
      Expr u = gen.sample(3, 3, true);
      Expr v = gen.sample(3, 3, true);
      Expr w = gen.sample(3, 3, true);
      if (!(dbracket(u, v, table) + dbracket(v, u, table)).is_zero()) {
        ok = false;
        detail = std::string("antisymmetry, ") + tc.name;
      }
      if (dbracket(u + v, w, table) !=
          dbracket(u, w, table) + dbracket(v, w, table)) {
        ok = false;
        detail = std::string("linearity, ") + tc.name;
      }
      if (!normal_form(dbracket(u * v, w, table) - dbracket(u, w, table) * v -
                           u * dbracket(v, w, table),
                       table)
               .is_zero()) {
        ok = false;
        detail = std::string("Leibniz, ") + tc.name;
      }
      if (!normal_form(dbracket(dbracket(u, v, table), w, table) -
                           dbracket(dbracket(u, w, table), v, table) -
                           dbracket(u, dbracket(v, w, table), table),
                       table)
               .is_zero()) {
        ok = false;
        detail = std::string("Jacobi, ") + tc.name;
      }
    }
  }
  double dt = seconds_since(t0);
  report("2 bracket axioms, 500 triples x 3 tables, exact",
         ok && dt < 30.0, detail.empty() ? fmt(dt) + " s" : detail);
}

void criterion_3_mccoy() {
  auto c = kvn_test::canonical1();
  RandomExpr gen(kvn_test::original_symbols(1), 0xACCE98);
  bool ok = true;
  for (int it = 0; it < 200 && ok; ++it) {
    Expr u = gen.sample(3, 4);
    Expr v = gen.sample(3, 4);
    ok = mccoy_bracket(u, v) == dbracket(u, v, c.table());
  }
  report("3 McCoy equivalence, 200 random pairs, exact", ok, "");
}

void criterion_4_extraction() {
  auto d = kvn_test::kvn1();
  RandomExpr gen(kvn_test::original_symbols(1), 0xACCE99);
  RandomExpr agen(kvn_test::original_symbols(1), 0xACCE9A);
  bool ok = true;
  for (int it = 0; it < 200 && ok; ++it) {
    Expr u = gen.sample(3, 4);
    Expr v = gen.sample(3, 4);
    Expr alpha = underline(agen.sample(2, 2));
    Expr lhs = underline(mccoy_bracket(u, v).hbar_term(0));
    Expr rhs = dbracket(u, tilde_image(v, d.theory, alpha), d.theory.table());
    ok = lhs == rhs;
  }
  report("4 KvN extraction: underlined hbar^0 of McCoy equals tilde bracket",
         ok, "");
}

void criterion_5_conservation() {
  bool ok = true;
  int count = 0;
  auto check_pair = [&](const Expr& u, const Expr& H, const TildeTheory& theory) {
    TildeTheory canonical = build_theory(theory.dof_count(), {});
    if (!dbracket(u, H, canonical.table()).is_zero()) return;  // not conserved
    ++count;
    Expr Ht = tilde_hamiltonian(H, theory, Expr::zero());
    if (!dbracket(theory.project(u), Ht, theory.table()).is_zero()) ok = false;
  };

  // Polynomials in H commute with H; rotation generators commute with
  // isotropic Hamiltonians; momenta with potential-free ones.
  auto d1 = kvn_test::kvn1();
  RandomExpr hgen(kvn_test::original_symbols(1), 0xACCE9B);
  std::mt19937_64 rng(0xACCE9C);
  std::uniform_int_distribution<int> coeff(-3, 3);
  while (count < 60) {
    Expr H = hgen.sample(2, 3);
    int c2 = coeff(rng), c1 = coeff(rng), c0 = coeff(rng);
    Expr u = Expr::scalar(Scalar(c2)) * H * H + Expr::scalar(Scalar(c1)) * H +
             Expr::scalar(Scalar(c0));
    check_pair(u, H, d1.theory);
  }
  auto d2 = kvn_test::kvn2();
  int rot = 0;
  while (rot < 40) {
    int a = coeff(rng);
    int b = coeff(rng);
    if (b == 0) b = 1;
    // H isotropic quadratic; L = q1 p2 - q2 p1 and polynomials in (H, L).
    Expr H = d2(std::string("(p_1^2 + p_2^2)/(2*m) + ") + std::to_string(b) +
                "*(q_1^2 + q_2^2)");
    Expr L = d2("q_1*p_2 - q_2*p_1");
    Expr u = (a % 2 == 0) ? L : L * H + Expr::scalar(Scalar(a)) * L;
    check_pair(u, H, d2.theory);
    ++rot;
  }
  report("5 conservation propagates to the deconjugation, " +
             std::to_string(count) + " pairs",
         ok && count >= 100, std::to_string(count) + " conserved pairs");
}

// ---------------------------------------------------------------- numerics

struct HarmonicRun {
  TrajectoryRecord traj;
  double runtime = 0.0;
};

HarmonicRun run_harmonic(const Expr& alpha_text_parsed, const SymbolScope& scope,
                         const TildeTheory& theory) {
  auto t0 = std::chrono::steady_clock::now();
  PhaseGrid grid({{Symbol::position(1), -8, 8, 128},
                  {Symbol::momentum(1), -8, 8, 128}});
  GridRep rep(theory, grid, 1.0, {{"m", 1.0}, {"k", 1.0}});
  Expr H = parse_expr("p^2/(2*m) + (k/2)*q^2", scope);
  Expr Ht = tilde_hamiltonian(H, theory, alpha_text_parsed);
  StateVector psi = make_gaussian(
      grid, {{1.0, std::sqrt(0.5), 0.0}, {0.0, std::sqrt(0.5), 0.0}}, 1.0);
  EvolveOptions options;
  options.dt = 1e-3;
  options.steps = 6284;  // one period of cos t
  options.observables = {
      {"E[q]", Observable::Expectation, Expr(Symbol::position(1)), Symbol()},
      {"E[p]", Observable::Expectation, Expr(Symbol::momentum(1)), Symbol()},
      {"rhs[q]", Observable::BracketRhs, Expr(Symbol::position(1)), Symbol()},
      {"unc[q]", Observable::Uncertainty, Expr::zero(), Symbol::position(1)},
      {"unc[p~]", Observable::Uncertainty, Expr::zero(),
       Symbol::tilde_momentum(1)},
      {"energy", Observable::Expectation, Ht, Symbol()},
  };
  HarmonicRun run;
  run.traj = evolve(psi, Ht, rep, options);
  run.runtime = seconds_since(t0);
  return run;
}

void criterion_6_harmonic(HarmonicRun& zero_alpha) {
  auto d = kvn_test::kvn1();
  zero_alpha = run_harmonic(Expr::zero(), d.scope, d.theory);
  const TrajectoryRecord& traj = zero_alpha.traj;

  auto q = traj.series("E[q]");
  double worst_q = 0.0;
  for (size_t k = 0; k < q.size(); ++k)
    worst_q = std::max(worst_q, std::abs(q[k] - std::cos(traj.times[k])));
  report("6.1 harmonic <q>(t) vs cos t, max err < 1e-5", worst_q < 1e-5,
         fmt(worst_q));

  auto dq = traj.series("unc[q]");
  auto dpt = traj.series("unc[p~]");
  double floor = 1.0;
  for (size_t k = 0; k < dq.size(); ++k) floor = std::min(floor, dq[k] * dpt[k]);
  report("6.2 uncertainty floor dq dp~ >= 0.5 - 1e-9 throughout",
         floor >= 0.5 - 1e-9, fmt(floor));

  double residual = ehrenfest_residual(traj, "E[q]", "rhs[q]");
  report("6.3 Ehrenfest residual < 1e-5", residual < 1e-5, fmt(residual));

  report("6.4 norm preserved within 1e-9", traj.max_norm_drift < 1e-9,
         fmt(traj.max_norm_drift));
  report("6.5 runtime < 60 s", zero_alpha.runtime < 60.0,
         fmt(zero_alpha.runtime) + " s");
}

void criterion_7_sharpness() {
  TildeTheory theory = build_theory(1, {1});
  PhaseGrid grid({{Symbol::position(1), -0.5, 0.5, 1024},
                  {Symbol::momentum(1), -0.5, 0.5, 1024}});
  GridRep rep(theory, grid, 1.0, {});
  StateVector psi = make_gaussian(grid, {{0.0, 0.01, 0.0}, {0.0, 0.01, 0.0}}, 1.0);
  double dq = rep.uncertainty(psi, Symbol::position(1));
  double dp = rep.uncertainty(psi, Symbol::momentum(1));
  double dpt = rep.uncertainty(psi, Symbol::tilde_momentum(1));
  bool ok = dq * dp < 1e-3 && dq * dpt >= 0.5 - 1e-9;
  report("7 classical sharpness dq dp << hbar/2 while dq dp~ >= hbar/2", ok,
         "dq dp = " + fmt(dq * dp) + ", dq dp~ = " + fmt(dq * dpt));
}

void criterion_9_alpha_independence(const HarmonicRun& zero_alpha) {
  auto d = kvn_test::kvn1();
  HarmonicRun other = run_harmonic(d("-p^2/(2*m)"), d.scope, d.theory);
  auto qa = zero_alpha.traj.series("E[q]");
  auto qb = other.traj.series("E[q]");
  auto pa = zero_alpha.traj.series("E[p]");
  auto pb = other.traj.series("E[p]");
  double worst = 0.0;
  for (size_t k = 0; k < qa.size(); ++k) {
    worst = std::max(worst, std::abs(qa[k] - qb[k]));
    worst = std::max(worst, std::abs(pa[k] - pb[k]));
  }
  report("9 alpha choice leaves <q>, <p> unchanged within 1e-8", worst < 1e-8,
         fmt(worst));
}

// ------------------------------------------------------------------ hybrid

void criterion_8_hybrid() {
  auto t0 = std::chrono::steady_clock::now();
  ModelFile model = load_model(MODELS_DIR "/hybrid.kvn");

  HybridConfig config;
  config.H = model.hamiltonian;
  config.theory = model.theory;
  config.params = model.param_values();
  config.hbar = model.hbar_value;
  config.grid = model.build_grid();
  auto spec = model.state_spec(config.grid);
  config.q1_state = spec[config.grid.axis_of(Symbol::position(1))];
  config.p1_state = spec[config.grid.axis_of(Symbol::momentum(1))];
  config.q2_state = spec[config.grid.axis_of(Symbol::position(2))];
  config.alpha = model.alpha;
  config.qtilde_offset = 0.5;
  config.t_final = 5.0;

  config.zero_tilde = true;
  HybridResult zero = hybrid_simulate(config);
  config.zero_tilde = false;
  HybridResult offset = hybrid_simulate(config);

  const double lambda = 0.1;

  {  // Zero-tilde run reproduces the factorized reference.
    auto p2 = zero.kvn.series("E[p_2]");
    auto ref = zero.reference.series("E[p_2]");
    double worst = 0.0;
    for (size_t k = 0; k < p2.size(); ++k)
      worst = std::max(worst, std::abs(p2[k] - ref[k]));
    report("8.1 zero-tilde <p_2> matches the factorized oracle within 2e-3",
           worst < 2e-3, fmt(worst));
    auto qt = zero.kvn.series("E[q~_1]");
    double worst_qt = 0.0;
    for (double v : qt) worst_qt = std::max(worst_qt, std::abs(v));
    report("8.2 auxiliary <q~_1> stays pinned at zero", worst_qt < 1e-6,
           fmt(worst_qt));
  }
  {  // The offset run leaks -lambda <q~_1> into d<p_2>/dt at t = 0.
    auto p2a = zero.kvn.series("E[p_2]");
    auto p2b = offset.kvn.series("E[p_2]");
    double dt = zero.kvn.dt;
    auto one_sided = [&](const std::vector<double>& f) {
      return (-3.0 * f[0] + 4.0 * f[1] - f[2]) / (2.0 * dt);
    };
    double measured = one_sided(p2b) - one_sided(p2a);
    double expected = -lambda * 0.5;
    report("8.3 initial d<p_2>/dt offset = -lambda 0.5 within 1e-4",
           std::abs(measured - expected) < 1e-4,
           fmt(measured) + " vs " + fmt(expected));
    // The same offset read from the recorded bracket expectations.
    auto ra = zero.kvn.series("rhs[p_2]");
    auto rb = offset.kvn.series("rhs[p_2]");
    report("8.4 bracket route agrees", std::abs((rb[0] - ra[0]) - expected) < 1e-6,
           fmt(rb[0] - ra[0]));
    auto qt = offset.kvn.series("E[q~_1]");
    report("8.5 offset run starts at <q~_1> = 0.5",
           std::abs(qt[0] - 0.5) < 1e-9, fmt(qt[0]));
  }
  report("8.6 norm preserved within 1e-9 in both runs",
         zero.kvn.max_norm_drift < 1e-9 && offset.kvn.max_norm_drift < 1e-9,
         fmt(std::max(zero.kvn.max_norm_drift, offset.kvn.max_norm_drift)));
  double dt = seconds_since(t0);
  report("8.7 hybrid demo runtime < 10 min", dt < 600.0, fmt(dt) + " s");
}

}  // namespace

int main(int argc, char** argv) {
  bool symbolic = argc <= 1, numerics = argc <= 1, hybrid = argc <= 1;
  for (int i = 1; i < argc; ++i) {
    if (!std::strcmp(argv[i], "symbolic")) symbolic = true;
    else if (!std::strcmp(argv[i], "numerics")) numerics = true;
    else if (!std::strcmp(argv[i], "hybrid")) hybrid = true;
    else {
      std::cerr << "unknown group '" << argv[i] << "'\n";
      return 2;
    }
  }
  try {
    if (symbolic) {
      criterion_1_golden_set();
      criterion_2_axioms();
      criterion_3_mccoy();
      criterion_4_extraction();
      criterion_5_conservation();
    }
    if (numerics) {
      HarmonicRun zero_alpha;
      criterion_6_harmonic(zero_alpha);
      criterion_7_sharpness();
      criterion_9_alpha_independence(zero_alpha);
    }
    if (hybrid) {
      criterion_8_hybrid();
    }
  } catch (const Error& e) {
    std::cout << "FAIL (exception) " << e.what() << "\n";
    return 1;
  }
  if (g_failures != 0) {
    std::cout << g_failures << " criterion check(s) failed\n";
    return 1;
  }
  std::cout << "all criteria passed\n";
  return 0;
}
