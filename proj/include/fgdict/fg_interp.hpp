#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <variant>
#include <vector>

#include "fgdict/common.hpp"
#include "fgdict/fg_ast.hpp"
#include "fgdict/fg_statics.hpp"

namespace fgdict::fg {

struct Stepped {
  ExprPtr next;
};
struct AtValue {
  FGValue value;
};
struct Panicked {
  ExprPtr witness;  // the failed assertion redex
};
struct Stuck {
  ExprPtr witness;
};
struct FreeVar {
  std::string name;
};

using StepResult = std::variant<Stepped, AtValue, Panicked, Stuck, FreeVar>;

// One leftmost-innermost reduction per the evaluation-context grammar:
// struct args left to right, then call receiver, then call args left to right.
StepResult fg_step(const DeclTable& table, const ExprPtr& e);

struct FGOutcome {
  enum class Kind { Value, Panic, BudgetExhausted };
  Kind kind;
  std::uint64_t steps = 0;
  std::optional<FGValue> value;  // Value
  ExprPtr witness;               // Panic: the stuck assertion; BudgetExhausted: last expression
};

// Iterates fg_step at most `budget` times. Throws FreeVariableError if e is
// open and InternalStuckError when a non-panic irreducible non-value shows up.
FGOutcome fg_run(const DeclTable& table, const ExprPtr& e, std::uint64_t budget,
                 const std::function<void(std::uint64_t, const ExprPtr&)>& on_step = nullptr);

// A context/redex split. The context is an expression with exactly one hole;
// plugging the redex back reproduces the decomposed expression.
struct Decomposition {
  ExprPtr context;
  ExprPtr redex;
};

ExprPtr plug(const ExprPtr& context, const ExprPtr& filler);

// Exhaustively enumerates every decomposition of e into an evaluation context
// and a directly reducible redex (field projection, call, or succeeding
// assertion). Values and panic states yield no decomposition. Independent of
// fg_step by construction; serves as the determinism oracle.
std::vector<Decomposition> fg_decompose_all(const DeclTable& table, const ExprPtr& e);

// Contracts a directly reducible redex; std::nullopt when no rule applies.
std::optional<ExprPtr> fg_contract(const DeclTable& table, const ExprPtr& redex);

}  // namespace fgdict::fg
