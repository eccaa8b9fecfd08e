#include "kvn/scope.hpp"

#include <algorithm>

#include "kvn/errors.hpp"

namespace kvn {

SymbolScope SymbolScope::for_dofs(int n) {
  SymbolScope s;
  for (int i = 1; i <= n; ++i) s.declare_dof(i);
  return s;
}

void SymbolScope::declare_dof(int dof) {
  if (dof < 1) throw TheoryError("degrees of freedom are numbered from 1");
  dof_count_ = std::max(dof_count_, dof);
  // Re-index everything: the q/p vs q_1/p_1 spelling depends on the count.
  by_name_.clear();
  for (int i = 1; i <= dof_count_; ++i) {
    index(Symbol::position(i));
    index(Symbol::momentum(i));
  }
  for (int i : tilde_dofs_) {
    index(Symbol::tilde_position(i));
    index(Symbol::tilde_momentum(i));
  }
  for (const auto& p : params_) index(p);
}

void SymbolScope::declare_tilde(int dof) {
  if (dof < 1 || dof > dof_count_) throw TheoryError("tilde dof out of range");
  if (has_tilde(dof)) return;
  tilde_dofs_.push_back(dof);
  index(Symbol::tilde_position(dof));
  index(Symbol::tilde_momentum(dof));
}

Symbol SymbolScope::declare_parameter(const std::string& name) {
  if (name == "hbar" || name == "i")
    throw TheoryError("'" + name + "' is reserved");
  if (by_name_.count(name)) throw TheoryError("name '" + name + "' already declared");
  Symbol s = Symbol::parameter(name);
  params_.push_back(s);
  index(s);
  return s;
}

bool SymbolScope::has_tilde(int dof) const {
  return std::find(tilde_dofs_.begin(), tilde_dofs_.end(), dof) !=
         tilde_dofs_.end();
}

std::optional<Symbol> SymbolScope::lookup(const std::string& n) const {
  auto it = by_name_.find(n);
  if (it == by_name_.end()) return std::nullopt;
  return it->second;
}

std::string SymbolScope::name(const Symbol& s) const {
  return s.default_name(dof_count_ > 1);
}

void SymbolScope::index(const Symbol& s) {
  by_name_[s.is_parameter() ? s.parameter_name() : name(s)] = s;
}

std::vector<Symbol> SymbolScope::operator_symbols() const {
  std::vector<Symbol> out;
  for (int i = 1; i <= dof_count_; ++i) {
    out.push_back(Symbol::position(i));
    if (has_tilde(i)) {
      out.push_back(Symbol::tilde_momentum(i));
      out.push_back(Symbol::tilde_position(i));
    }
    out.push_back(Symbol::momentum(i));
  }
  return out;
}

std::string SymbolScope::render(const Expr& e) const {
  return e.str([this](const Symbol& s) { return name(s); });
}

}  // namespace kvn
