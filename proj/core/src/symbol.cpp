#include "kvn/symbol.hpp"

namespace kvn {

std::string Symbol::default_name(bool with_index) const {
  if (is_parameter()) return parameter_name();
  std::string base = is_position_like(kind_) ? "q" : "p";
  if (with_index) base += "_" + std::to_string(dof_);
  if (is_tilde()) base += "~";
  return base;
}

}  // namespace kvn
