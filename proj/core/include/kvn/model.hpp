#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "kvn/dynamics.hpp"
#include "kvn/grid.hpp"
#include "kvn/parser.hpp"

namespace kvn {

// A batch model description. Line-oriented key-value format:
//
//   dofs 2                  # degrees of freedom, numbered from 1
//   deconjugate 1           # dofs carrying the KvN (classical) structure
//   param m_1 1.0
//   hbar 1.0
//   hamiltonian p_1^2/(2*m_1) + p_2^2/(2*m_2) + lambda*q_1*q_2
//   alpha -p_1^2/(2*m_1)    # optional, default 0
//   grid q_1 -3 5 64        # symbol, lo, hi, points (power of two)
//   state q_1 center=1 sigma=0.25 pgrad=0
//   dt 0.001                # optional; default 0.5/||H~/hbar||
//   steps 6284              # or: t_final 6.284
//   observe q_1             # expression, or unc(sym) / rhs(expr) / energy
//   qtilde_offset 0.5       # hybrid: <q~_1> when --zero-tilde false
//   command eom             # executed in order by `run`
struct ModelFile {
  int dofs = 0;
  std::set<int> deconjugate;
  std::vector<std::pair<std::string, double>> params;
  double hbar_value = 1.0;
  std::string hamiltonian_text;
  std::optional<std::string> alpha_text;
  struct GridAxis {
    std::string symbol;
    double lo, hi;
    int points;
  };
  std::vector<GridAxis> grid_axes;
  std::map<std::string, GaussianAxis> states;  // keyed by axis symbol name
  std::optional<double> dt;
  std::optional<long> steps;
  std::optional<double> t_final;
  double qtilde_offset = 0.5;
  std::vector<std::string> observes;
  std::vector<std::vector<std::string>> commands;

  // Derived by finalize():
  SymbolScope scope;
  TildeTheory theory;
  Expr hamiltonian;
  Expr alpha;

  void finalize();

  std::map<std::string, double> param_values() const;
  PhaseGrid build_grid() const;
  std::vector<GaussianAxis> state_spec(const PhaseGrid& grid) const;
};

ModelFile parse_model_text(const std::string& text);
ModelFile load_model(const std::string& path);

}  // namespace kvn
