#pragma once

#include <string>

#include "fgdict/tl_ast.hpp"

namespace fgdict::tl {

std::string print_expr(const TLExpr& e);
inline std::string print_expr(const TLExprPtr& e) { return print_expr(*e); }
std::string print_value(const TLValue& v);
std::string print_program(const TLProgram& p);

}  // namespace fgdict::tl
