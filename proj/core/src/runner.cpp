#include "kvn/runner.hpp"

#include <filesystem>
#include <ostream>
#include <random>

#include "kvn/evolve.hpp"

namespace kvn {

namespace {

Expr resolve_alpha(const ModelFile& model, const RunOptions& options) {
  switch (options.alpha_mode) {
    case RunOptions::AlphaMode::Zero:
      return Expr::zero();
    case RunOptions::AlphaMode::Decouple: {
      AlphaDecoupling d = alpha_decoupling(model.hamiltonian, model.theory);
      if (!d.ok) throw TheoryError(d.reason);
      return d.alpha;
    }
    case RunOptions::AlphaMode::Model:
    default:
      return model.alpha;
  }
}

Observable parse_observable(const ModelFile& model, const Expr& generator,
                            std::string text) {
  auto trim = [](std::string s) {
    size_t b = s.find_first_not_of(" \t");
    size_t e = s.find_last_not_of(" \t");
    return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
  };
  text = trim(text);
  if (text == "energy")
    return {"energy", Observable::Expectation, generator, Symbol()};
  auto wrapped = [&](const std::string& head) -> std::optional<std::string> {
    if (text.rfind(head + "(", 0) == 0 && text.back() == ')')
      return trim(text.substr(head.size() + 1, text.size() - head.size() - 2));
    return std::nullopt;
  };
  if (auto inner = wrapped("unc")) {
    auto sym = model.scope.lookup(*inner);
    if (!sym || sym->is_parameter())
      throw ParseError("unc(...) expects a declared phase-space symbol");
    return {"unc[" + *inner + "]", Observable::Uncertainty, Expr::zero(), *sym};
  }
  if (auto inner = wrapped("rhs")) {
    return {"rhs[" + *inner + "]", Observable::BracketRhs,
            parse_expr(*inner, model.scope), Symbol()};
  }
  return {"E[" + text + "]", Observable::Expectation,
          parse_expr(text, model.scope), Symbol()};
}

std::vector<Observable> default_observables(const ModelFile& model,
                                            const Expr& generator) {
  std::vector<Observable> out;
  for (const Symbol& s : model.scope.operator_symbols()) {
    std::string n = model.scope.name(s);
    out.push_back({"E[" + n + "]", Observable::Expectation, Expr(s), Symbol()});
  }
  for (const Symbol& s : model.scope.operator_symbols()) {
    std::string n = model.scope.name(s);
    out.push_back({"unc[" + n + "]", Observable::Uncertainty, Expr::zero(), s});
  }
  out.push_back({"energy", Observable::Expectation, generator, Symbol()});
  return out;
}

void write_record(const TrajectoryRecord& traj, const RunOptions& options,
                  const std::string& stem, std::ostream& out) {
  namespace fs = std::filesystem;
  fs::create_directories(options.out_dir);
  std::string csv = (fs::path(options.out_dir) / (stem + ".csv")).string();
  write_text_file(csv, traj.to_csv());
  out << "wrote " << csv << " (" << traj.samples.size() << " samples, max norm drift "
      << traj.max_norm_drift << ")\n";
  if (options.plot_data) {
    std::string dat = (fs::path(options.out_dir) / (stem + ".dat")).string();
    write_text_file(dat, traj.to_plot_data());
    out << "wrote " << dat << "\n";
  }
}

long resolve_steps(const ModelFile& model, const RunOptions& options, double dt) {
  if (options.steps) return *options.steps;
  if (model.steps) return *model.steps;
  if (model.t_final) return static_cast<long>(std::ceil(*model.t_final / dt));
  throw ParseError("model needs 'steps' or 't_final' (or pass --steps)");
}

int cmd_bracket(const ModelFile& model, const std::vector<std::string>& args,
                std::ostream& out) {
  if (args.size() != 2)
    throw ParseError("usage: bracket <expr> <expr>");
  Expr u = parse_expr(args[0], model.scope);
  Expr v = parse_expr(args[1], model.scope);
  out << model.scope.render(dbracket(u, v, model.theory.table())) << "\n";
  return 0;
}

int cmd_deconjugate(const ModelFile& model, const RunOptions& options,
                    std::ostream& out) {
  Expr H_tilde =
      tilde_hamiltonian(model.hamiltonian, model.theory, resolve_alpha(model, options));
  out << "H~ = " << model.scope.render(H_tilde) << "\n";
  return 0;
}

int cmd_eom(const ModelFile& model, const RunOptions& options, std::ostream& out) {
  Expr generator = model_generator(model, options);
  for (const Symbol& s : model.scope.operator_symbols()) {
    EquationOfMotion e = eom(s, generator, model.theory.table());
    out << "d/dt " << model.scope.name(s) << " = " << model.scope.render(e.rhs)
        << "\n";
  }
  return 0;
}

int cmd_lagrangian(const ModelFile& model, const RunOptions& options,
                   std::ostream& out) {
  Expr H_tilde = model_generator(model, options);
  out << "L~ = " << model.scope.render(tilde_lagrangian(H_tilde, model.theory))
      << "\n";
  return 0;
}

int cmd_conserve(const ModelFile& model, const RunOptions& options,
                 const std::vector<std::string>& args, std::ostream& out) {
  if (args.size() != 1) throw ParseError("usage: conserve <expr>");
  Expr u = parse_expr(args[0], model.scope);
  ConservedCheck c =
      conserved_check(u, model.hamiltonian, model.theory, resolve_alpha(model, options));
  out << "canonical_conserved " << (c.canonical_conserved ? "true" : "false") << "\n";
  out << "tilde_conserved " << (c.tilde_conserved ? "true" : "false") << "\n";
  if (c.converse_witness)
    out << "note: conserved only after deconjugation (converse witness)\n";
  return 0;
}

int cmd_extra_terms(const ModelFile& model, const RunOptions& options,
                    std::ostream& out) {
  ExtraTermReport report =
      extra_terms(model.hamiltonian, model.theory, resolve_alpha(model, options));
  for (const auto& entry : report.entries) {
    out << "d/dt " << model.scope.name(entry.var) << " = "
        << model.scope.render(entry.full) << "\n";
    out << "  tilde-free part: " << model.scope.render(entry.base) << "\n";
    for (const auto& part : entry.parts)
      out << "  " << model.scope.name(part.tilde)
          << " term: " << model.scope.render(part.contribution) << "\n";
  }
  return 0;
}

int cmd_alpha(const ModelFile& model, std::ostream& out) {
  AlphaDecoupling d = alpha_decoupling(model.hamiltonian, model.theory);
  if (!d.ok) {
    out << d.reason << "\n";
    throw TheoryError(d.reason);
  }
  const int dof = *model.theory.subset().begin();
  std::string qt = model.scope.name(Symbol::tilde_position(dof));
  out << "alpha = " << model.scope.render(d.alpha) << "\n";
  out << "d2/dt2 " << qt << " = "
      << model.scope.render(d.qtilde_acceleration) << "\n";
  out << "homogeneous: " << (d.certified ? "true" : "false") << "\n";
  return 0;
}

int cmd_simulate(const ModelFile& model, const RunOptions& options,
                 std::ostream& out) {
  Expr alpha = resolve_alpha(model, options);
  Expr H_tilde = tilde_hamiltonian(model.hamiltonian, model.theory, alpha);
  PhaseGrid grid = model.build_grid();
  GridRep rep =
      build_representation(model.theory, grid, model.hbar_value, model.param_values());
  StateVector state = make_gaussian(grid, model.state_spec(grid), model.hbar_value);

  EvolveOptions evolve_options;
  evolve_options.dt = options.dt ? *options.dt
                      : model.dt ? *model.dt
                                 : stable_dt(rep, H_tilde);
  evolve_options.steps = resolve_steps(model, options, evolve_options.dt);
  if (model.observes.empty()) {
    evolve_options.observables = default_observables(model, H_tilde);
  } else {
    for (const auto& text : model.observes)
      evolve_options.observables.push_back(parse_observable(model, H_tilde, text));
  }
  TrajectoryRecord traj = evolve(state, H_tilde, rep, evolve_options);
  write_record(traj, options, "trajectory", out);
  return 0;
}

int cmd_hybrid(const ModelFile& model, const RunOptions& options,
               std::ostream& out) {
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
  config.alpha = resolve_alpha(model, options);
  config.zero_tilde = options.zero_tilde.value_or(true);
  config.qtilde_offset = model.qtilde_offset;
  config.dt = options.dt ? *options.dt : model.dt.value_or(0.0);
  if (model.t_final)
    config.t_final = *model.t_final;
  else if (model.steps && (options.dt || model.dt))
    config.t_final = *model.steps * (options.dt ? *options.dt : *model.dt);
  HybridResult result = hybrid_simulate(config);
  out << "dt = " << result.dt << "\n";
  write_record(result.kvn, options, "hybrid_kvn", out);
  write_record(result.reference, options, "hybrid_reference", out);
  return 0;
}

// Small deterministic expression sampler for the verify command.
class ExprSampler {
 public:
  ExprSampler(const ModelFile& model, uint64_t seed) : rng_(seed) {
    for (const Symbol& s : model.scope.operator_symbols()) symbols_.push_back(s);
  }

  Expr sample(int max_terms = 3, int max_degree = 3) {
    std::uniform_int_distribution<int> nterms(1, max_terms);
    std::uniform_int_distribution<int> degree(0, max_degree);
    std::uniform_int_distribution<int> coeff(-3, 3);
    std::uniform_int_distribution<size_t> pick(0, symbols_.size() - 1);
    Expr acc;
    int n = nterms(rng_);
    for (int t = 0; t < n; ++t) {
      int c = coeff(rng_);
      if (c == 0) c = 1;
      Expr term = Expr::scalar(Scalar(c));
      int d = degree(rng_);
      for (int k = 0; k < d; ++k) term *= Expr(symbols_[pick(rng_)]);
      acc += term;
    }
    return acc;
  }

 private:
  std::mt19937_64 rng_;
  std::vector<Symbol> symbols_;
};

int cmd_verify(const ModelFile& model, const RunOptions& options,
               std::ostream& out) {
  int failures = 0;
  auto check = [&](const std::string& name, bool ok, const std::string& detail = "") {
    out << (ok ? "PASS " : "FAIL ") << name;
    if (!ok && !detail.empty()) out << ": " << detail;
    out << "\n";
    if (!ok) ++failures;
  };
  const RelationTable& table = model.theory.table();
  Expr alpha = resolve_alpha(model, options);
  Expr H_tilde = tilde_hamiltonian(model.hamiltonian, model.theory, alpha);

  // Normal form is a projection.
  Expr nf = normal_form(H_tilde, table);
  check("normal-form idempotent on H~", normal_form(nf, table) == nf);

  // Printed expressions re-parse to equal operators.
  try {
    Expr reparsed = parse_expr(model.scope.render(H_tilde), model.scope);
    check("H~ print/parse round trip", equal_mod(reparsed, H_tilde, table));
  } catch (const Error& e) {
    check("H~ print/parse round trip", false, e.what());
  }

  // Bracket axioms on sampled triples.
  ExprSampler sampler(model, 0x564b564eULL);
  bool axioms = true;
  std::string axiom_detail;
  for (int it = 0; it < 25 && axioms; ++it) {
    Expr u = sampler.sample(), v = sampler.sample(), w = sampler.sample();
    Expr anti = dbracket(u, v, table) + dbracket(v, u, table);
    if (!anti.is_zero()) { axioms = false; axiom_detail = "antisymmetry"; }
    Expr lin = dbracket(u + v, w, table) - dbracket(u, w, table) - dbracket(v, w, table);
    if (!lin.is_zero()) { axioms = false; axiom_detail = "linearity"; }
    Expr leib = dbracket(u * v, w, table) - dbracket(u, w, table) * v -
                u * dbracket(v, w, table);
    if (!normal_form(leib, table).is_zero()) { axioms = false; axiom_detail = "Leibniz"; }
    Expr jac = dbracket(dbracket(u, v, table), w, table) -
               dbracket(dbracket(u, w, table), v, table) -
               dbracket(u, dbracket(v, w, table), table);
    if (!normal_form(jac, table).is_zero()) { axioms = false; axiom_detail = "Jacobi"; }
  }
  check("bracket axioms (25 sampled triples)", axioms, axiom_detail);

  // Original-variable equations of motion are tilde-free and match the
  // commutative projection of the canonical ones.
  if (!model.theory.subset().empty()) {
    bool match = true, tilde_free = true;
    TildeTheory canonical = build_theory(model.dofs, {});
    for (int d : model.theory.subset()) {
      for (const Symbol& s : {Symbol::position(d), Symbol::momentum(d)}) {
        Expr tilde_rhs = eom(s, H_tilde, table).rhs;
        if (tilde_rhs.contains_tilde()) tilde_free = false;
        Expr original = eom(s, model.hamiltonian, canonical.table()).rhs;
        if (!(tilde_rhs == model.theory.project(original))) match = false;
      }
    }
    check("original-variable EOMs are tilde-free", tilde_free);
    check("tilde EOMs project the canonical ones", match);

    Expr H0 = tilde_hamiltonian(model.hamiltonian, model.theory, Expr::zero());
    bool alpha_independent = true;
    for (int d = 1; d <= model.dofs; ++d)
      for (const Symbol& s : {Symbol::position(d), Symbol::momentum(d)})
        if (!(eom(s, H_tilde, table).rhs == eom(s, H0, table).rhs))
          alpha_independent = false;
    check("alpha drops out of original-variable EOMs", alpha_independent);
  }

  // Grid-level checks when the model declares a grid.
  if (!model.grid_axes.empty()) {
    try {
      PhaseGrid grid = model.build_grid();
      GridRep rep = build_representation(model.theory, grid, model.hbar_value,
                                         model.param_values());
      StateVector probe =
          make_gaussian(grid, model.state_spec(grid), model.hbar_value);
      check("initial state normalized", std::abs(probe.norm() - 1.0) < 1e-12);
      double worst = 0.0;
      std::vector<Symbol> syms = model.scope.operator_symbols();
      for (size_t a = 0; a < syms.size(); ++a)
        for (size_t b = a + 1; b < syms.size(); ++b)
          worst = std::max(worst, rep.commutator_residual(probe, syms[a], syms[b]));
      check("grid commutator relations (relative residual < 1e-8)", worst < 1e-8,
            "worst residual " + std::to_string(worst));
    } catch (const Error& e) {
      check("grid representation", false, e.what());
    }
  }

  if (failures != 0)
    throw TheoryError(std::to_string(failures) + " verify check(s) failed");
  return 0;
}

}  // namespace

Expr model_generator(const ModelFile& model, const RunOptions& options) {
  return tilde_hamiltonian(model.hamiltonian, model.theory,
                           resolve_alpha(model, options));
}

int run_command(const ModelFile& model, const std::string& command,
                const std::vector<std::string>& args, const RunOptions& options,
                std::ostream& out) {
  if (command == "bracket") return cmd_bracket(model, args, out);
  if (command == "deconjugate") return cmd_deconjugate(model, options, out);
  if (command == "eom") return cmd_eom(model, options, out);
  if (command == "lagrangian") return cmd_lagrangian(model, options, out);
  if (command == "conserve") return cmd_conserve(model, options, args, out);
  if (command == "extra-terms") return cmd_extra_terms(model, options, out);
  if (command == "alpha") return cmd_alpha(model, out);
  if (command == "simulate") return cmd_simulate(model, options, out);
  if (command == "hybrid") return cmd_hybrid(model, options, out);
  if (command == "verify") return cmd_verify(model, options, out);
  throw ParseError("unknown command '" + command + "'");
}

}  // namespace kvn
