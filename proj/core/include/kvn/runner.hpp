#pragma once

#include <iosfwd>
#include <optional>

#include "kvn/hybrid.hpp"
#include "kvn/model.hpp"

namespace kvn {

struct RunOptions {
  std::string out_dir = ".";
  std::optional<double> dt;
  std::optional<long> steps;
  enum class AlphaMode { Model, Zero, Decouple } alpha_mode = AlphaMode::Model;
  std::optional<bool> zero_tilde;
  bool plot_data = false;
};

// Dispatches one subcommand against a model. Text results go to `out`;
// simulate/hybrid additionally write CSV files under options.out_dir.
// Returns the process exit status (0 success; errors are thrown: ParseError
// -> 1, TheoryError -> 2, NumericError -> 3 at the CLI boundary).
int run_command(const ModelFile& model, const std::string& command,
                const std::vector<std::string>& args, const RunOptions& options,
                std::ostream& out);

// The generator of motion for the model: tilde-Hamiltonian for
// deconjugated models, the Hamiltonian itself for canonical ones.
Expr model_generator(const ModelFile& model, const RunOptions& options);

}  // namespace kvn
