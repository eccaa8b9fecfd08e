#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "kvn/expr.hpp"

namespace kvn {

// Name table for a theory's symbols. Degrees of freedom are numbered from 1
// and spelled q/p for a single one, q_1/p_1/... otherwise; the tilde suffix
// `~` marks the auxiliary conjugates (q~, p_2~). Parameters are declared by
// name and are central.
class SymbolScope {
 public:
  SymbolScope() = default;

  // Declares dofs 1..n; tilde pairs are added per dof by declare_tilde.
  static SymbolScope for_dofs(int n);

  void declare_dof(int dof);
  void declare_tilde(int dof);
  Symbol declare_parameter(const std::string& name);

  int dof_count() const { return dof_count_; }
  bool has_tilde(int dof) const;
  const std::vector<Symbol>& parameters() const { return params_; }

  std::optional<Symbol> lookup(const std::string& name) const;
  std::string name(const Symbol& s) const;

  // All declared operator symbols in global order.
  std::vector<Symbol> operator_symbols() const;

  std::string render(const Expr& e) const;

 private:
  void index(const Symbol& s);

  int dof_count_ = 0;
  std::vector<int> tilde_dofs_;
  std::vector<Symbol> params_;
  std::map<std::string, Symbol> by_name_;
};

}  // namespace kvn
