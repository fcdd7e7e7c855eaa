#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <variant>
#include <vector>

#include "fgdict/common.hpp"
#include "fgdict/tl_ast.hpp"

namespace fgdict::tl {

struct Stepped {
  TLExprPtr next;
};
struct AtValue {
  TLValue value;
};
struct Panicked {
  TLExprPtr witness;  // the case expression with no matching clause
};
struct Stuck {
  TLExprPtr witness;
};

using StepResult = std::variant<Stepped, AtValue, Panicked, Stuck>;

// One step under the Fig-4 context grammar: case scrutinee first; in an
// application the function position first, then the argument. Throws
// UnboundMethodVarError when an unbound method variable reaches application
// position with a value argument.
StepResult tl_step(const MethodBindings& mu, const TLExprPtr& e);

struct TLOutcome {
  enum class Kind { Value, Panic, BudgetExhausted };
  Kind kind;
  std::uint64_t steps = 0;
  std::optional<TLValue> value;
  TLExprPtr witness;  // Panic: failing case; BudgetExhausted: last expression
};

TLOutcome tl_run(const TLProgram& prog, std::uint64_t budget,
                 const std::function<void(std::uint64_t, const TLExprPtr&)>& on_step = nullptr);

// As tl_run but for a bare expression under explicit bindings.
TLOutcome tl_run_expr(const MethodBindings& mu, const TLExprPtr& e, std::uint64_t budget,
                      const std::function<void(std::uint64_t, const TLExprPtr&)>& on_step = nullptr);

struct Decomposition {
  TLExprPtr context;
  TLExprPtr redex;
};

TLExprPtr plug(const TLExprPtr& context, const TLExprPtr& filler);

// Exhaustive enumeration of (evaluation context, directly reducible redex)
// splits; the determinism oracle for the target language.
std::vector<Decomposition> tl_decompose_all(const MethodBindings& mu, const TLExprPtr& e);

std::optional<TLExprPtr> tl_contract(const MethodBindings& mu, const TLExprPtr& redex);

// Capture-avoiding simultaneous substitution of values for free variables.
// Renamed binders draw from the '%' namespace, which surface identifiers
// cannot contain.
TLExprPtr substitute(const TLExprPtr& e,
                     const std::vector<std::pair<std::string, TLExprPtr>>& binds,
                     std::uint64_t& fresh_counter);

}  // namespace fgdict::tl
