#pragma once

#include <string>
#include <variant>

#include "fgdict/fg_ast.hpp"

namespace fgdict::fg {

struct SyntaxError {
  int line = 0;
  int column = 0;
  std::string message;

  std::string to_string() const;
};

using ParseResult = std::variant<Program, SyntaxError>;

// Total: returns a Program or the first SyntaxError, never loops.
ParseResult parse_program(const std::string& source);

}  // namespace fgdict::fg
