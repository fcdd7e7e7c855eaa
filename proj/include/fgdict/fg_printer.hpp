#pragma once

#include <string>

#include "fgdict/fg_ast.hpp"

namespace fgdict::fg {

std::string print_expr(const Expr& e);
inline std::string print_expr(const ExprPtr& e) { return print_expr(*e); }
std::string print_value(const FGValue& v);

// Emits concrete syntax that parses back to a structurally equal program.
std::string print_program(const Program& p);

}  // namespace fgdict::fg
