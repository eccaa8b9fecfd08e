#pragma once

#include <string>

#include "kvn/expr.hpp"
#include "kvn/scope.hpp"

namespace kvn {

// Parses the expression DSL:
//   identifiers  [a-z][a-z0-9_]* with optional tilde suffix `~`
//   operators    + - * / ^   (^ takes a nonnegative integer exponent)
//   literals     integers; rationals are formed by division
//   reserved     hbar, i
// Multiplication order is preserved exactly as written; division is only
// defined by scalars and parameters. Throws ParseError with a byte offset.
Expr parse_expr(const std::string& text, const SymbolScope& scope);

}  // namespace kvn
