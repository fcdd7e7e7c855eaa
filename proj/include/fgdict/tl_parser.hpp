#pragma once

#include <string>
#include <variant>

#include "fgdict/tl_ast.hpp"

namespace fgdict::tl {

struct TLSyntaxError {
  int line = 0;
  int column = 0;
  std::string message;

  std::string to_string() const;
};

using TLParseResult = std::variant<TLProgram, TLSyntaxError>;

// Parses the TL text format. Identifiers containing '$' are method
// variables, identifiers starting with "K_" or "Tuple<digits>" are
// constructors, everything else is a term variable; in pattern head position
// any identifier is a constructor. Lambda-tuple binders and nested tuple
// patterns are accepted as sugar and desugared to the core forms.
TLParseResult parse_program(const std::string& source);

}  // namespace fgdict::tl
