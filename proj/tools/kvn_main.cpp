// kvn: batch front end for deconjugated (KvN) dynamics. Parses a model
// file, derives brackets / tilde-Hamiltonians / equations of motion
// symbolically, and propagates states on phase-space grids.
//
//   kvn <subcommand> --model <path> [--out <dir>] [--dt <float>]
//       [--steps <int>] [--alpha-zero|--alpha-decouple]
//       [--zero-tilde true|false] [--plot-data]
//
// Subcommands: bracket, deconjugate, eom, lagrangian, conserve,
// extra-terms, alpha, simulate, hybrid, verify, run (executes the model's
// command list). Exit codes: 1 parse error, 2 theory error, 3 numeric
// instability.

#include <CLI11.hpp>

#include <iostream>

#include "kvn/runner.hpp"

namespace {

int dispatch(const std::string& command, const std::string& model_path,
             const std::vector<std::string>& args, const kvn::RunOptions& options) {
  kvn::ModelFile model = kvn::load_model(model_path);
  if (command == "run") {
    if (model.commands.empty())
      throw kvn::ParseError("model has no command list");
    for (const auto& line : model.commands) {
      std::vector<std::string> rest(line.begin() + 1, line.end());
      int rc = kvn::run_command(model, line[0], rest, options, std::cout);
      if (rc != 0) return rc;
    }
    return 0;
  }
  return kvn::run_command(model, command, args, options, std::cout);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Deconjugation toolkit: KvN theories derived from canonical ones"};
  app.require_subcommand(0, 1);

  std::string model_path;
  std::vector<std::string> args;
  kvn::RunOptions options;
  double dt = 0.0;
  long steps = -1;
  bool alpha_zero = false, alpha_decouple = false;
  std::string zero_tilde;

  const std::vector<std::string> names = {
      "bracket", "deconjugate", "eom",      "lagrangian", "conserve",
      "extra-terms", "alpha",   "simulate", "hybrid",     "verify", "run"};
  std::string chosen;
  for (const auto& name : names) {
    CLI::App* sub = app.add_subcommand(name);
    sub->add_option("--model", model_path, "model file path")->required();
    sub->add_option("--out", options.out_dir, "output directory");
    sub->add_option("--dt", dt, "time step override");
    sub->add_option("--steps", steps, "step count override");
    sub->add_flag("--alpha-zero", alpha_zero, "force alpha = 0");
    sub->add_flag("--alpha-decouple", alpha_decouple,
                  "use the decoupling alpha = -p^2/2m");
    sub->add_option("--zero-tilde", zero_tilde, "true|false");
    sub->add_flag("--plot-data", options.plot_data, "also write gnuplot .dat files");
    sub->add_option("args", args, "positional expression arguments");
    sub->callback([&chosen, name] { chosen = name; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, std::cout, std::cerr);
  }
  if (chosen.empty()) {
    std::cerr << app.help() << std::flush;
    return 1;
  }

  if (dt > 0) options.dt = dt;
  if (steps >= 0) options.steps = steps;
  if (alpha_zero && alpha_decouple) {
    std::cerr << "error: --alpha-zero and --alpha-decouple are exclusive\n";
    return 1;
  }
  if (alpha_zero) options.alpha_mode = kvn::RunOptions::AlphaMode::Zero;
  if (alpha_decouple) options.alpha_mode = kvn::RunOptions::AlphaMode::Decouple;
  if (!zero_tilde.empty()) {
    if (zero_tilde != "true" && zero_tilde != "false") {
      std::cerr << "error: --zero-tilde expects true or false\n";
      return 1;
    }
    options.zero_tilde = zero_tilde == "true";
  }

  try {
    return dispatch(chosen, model_path, args, options);
  } catch (const kvn::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 1;
  } catch (const kvn::NumericError& e) {
    std::cerr << "numeric error: " << e.what() << "\n";
    return 3;
  } catch (const kvn::TheoryError& e) {
    std::cerr << "theory error: " << e.what() << "\n";
    return 2;
  } catch (const kvn::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
