#include "doctest.h"

#include "fgdict/fg_interp.hpp"
#include "fgdict/fg_printer.hpp"
#include "test_util.hpp"

using namespace fgdict;
using namespace testutil;

namespace {

fg::ExprPtr lit(const char* name, std::vector<fg::ExprPtr> args = {}) {
  return fg::make_struct_lit(name, std::move(args));
}

// Runs the expression and checks the determinism oracle at every state along
// the way: exactly one decomposition, and contracting it in place equals the
// stepper's result.
void check_deterministic_trace(const fg::DeclTable& t, fg::ExprPtr e, std::uint64_t max_steps) {
  for (std::uint64_t i = 0; i < max_steps; ++i) {
    if (fg::is_value(*e)) {
      CHECK(fg::fg_decompose_all(t, e).empty());
      return;
    }
    auto r = fg::fg_step(t, e);
    auto* stepped = std::get_if<fg::Stepped>(&r);
    if (stepped == nullptr) return;  // panic or stuck; no step happened
    auto decomps = fg::fg_decompose_all(t, e);
    REQUIRE_MESSAGE(decomps.size() == 1, "expected a unique decomposition of ", fg::print_expr(*e));
    auto contracted = fg::fg_contract(t, decomps[0].redex);
    REQUIRE(contracted.has_value());
    CHECK(fg::equal(fg::plug(decomps[0].context, *contracted), stepped->next));
    CHECK(fg::equal(fg::plug(decomps[0].context, decomps[0].redex), e));
    e = stepped->next;
  }
}

}  // namespace

TEST_CASE("field projection picks the named component") {
  fg::DeclTable t = table_ok(
      "type U struct { } type T struct { a U  b U } func main() { _ = T{U{}, U{}}.b }");
  auto r = fg::fg_step(t, t.program().main);
  auto* s = std::get_if<fg::Stepped>(&r);
  REQUIRE(s != nullptr);
  CHECK(fg::equal(s->next, lit("U")));
}

TEST_CASE("method call substitutes receiver and arguments into the body") {
  fg::DeclTable t = table_ok(
      "type V struct { } type T struct { v V } "
      "func (x T) pick(y T) V { return y.v } "
      "func main() { _ = T{V{}}.pick(T{V{}}) }");
  auto r = fg::fg_step(t, t.program().main);
  auto* s = std::get_if<fg::Stepped>(&r);
  REQUIRE(s != nullptr);
  CHECK(fg::equal(s->next, fg::make_select(lit("T", {lit("V")}), "v")));
}

TEST_CASE("a failed assertion between distinct structs panics") {
  fg::DeclTable t = table_ok("type A struct { } type B struct { } func main() { _ = A{} }");
  auto r = fg::fg_step(t, fg::make_assert(lit("B"), "A"));
  CHECK(std::holds_alternative<fg::Panicked>(r));
}

TEST_CASE("a succeeding assertion returns the value unchanged") {
  fg::DeclTable t = table_ok(
      "type A struct { } type Any interface { } func main() { _ = A{} }");
  auto r = fg::fg_step(t, fg::make_assert(lit("A"), "Any"));
  auto* s = std::get_if<fg::Stepped>(&r);
  REQUIRE(s != nullptr);
  CHECK(fg::equal(s->next, lit("A")));
}

TEST_CASE("the equality corpus program runs to its boolean encoding in three steps") {
  fg::DeclTable t = table_ok(read_file(corpus_path("sec2.fg")));
  auto out = fg::fg_run(t, t.program().main, 100);
  REQUIRE(out.kind == fg::FGOutcome::Kind::Value);
  CHECK(out.steps == 3);  // select, select, call
  CHECK(out.value->type_name == "True");
}

TEST_CASE("a value runs to itself in zero steps even with a zero budget") {
  fg::DeclTable t = table_ok("type T struct { } func main() { _ = T{} }");
  auto out = fg::fg_run(t, t.program().main, 0);
  CHECK(out.kind == fg::FGOutcome::Kind::Value);
  CHECK(out.steps == 0);
}

TEST_CASE("the self-recursive corpus program exhausts its budget") {
  fg::DeclTable t = table_ok(read_file(corpus_path("loop.fg")));
  auto out = fg::fg_run(t, t.program().main, 1000);
  CHECK(out.kind == fg::FGOutcome::Kind::BudgetExhausted);
  CHECK(out.steps == 1000);
}

TEST_CASE("panic outcomes report the step count at which they occurred") {
  fg::DeclTable t = table_ok(read_file(corpus_path("panic_assert.fg")));
  auto out = fg::fg_run(t, t.program().main, 100);
  REQUIRE(out.kind == fg::FGOutcome::Kind::Panic);
  CHECK(out.steps == 1);  // one call step, then the assertion is stuck
  CHECK(out.witness->get_if<fg::AssertExpr>() != nullptr);
}

TEST_CASE("free variables are rejected") {
  fg::DeclTable t = table_ok("type T struct { } func main() { _ = T{} }");
  CHECK_THROWS_AS(fg::fg_run(t, fg::make_var("x"), 10), FreeVariableError);
  CHECK_THROWS_AS(
      fg::fg_run(t, fg::make_call(lit("T"), "m", {fg::make_var("y")}), 10),
      FreeVariableError);
}

TEST_CASE("stuck non-panic expressions surface as an internal error") {
  fg::DeclTable t = table_ok("type T struct { } func main() { _ = T{} }");
  // No such method: irreducible, not a value, not a failed assertion.
  CHECK_THROWS_AS(fg::fg_run(t, fg::make_call(lit("T"), "m", {}), 10), InternalStuckError);
  // Field selection on a struct without fields.
  CHECK_THROWS_AS(fg::fg_run(t, fg::make_select(lit("T"), "f"), 10), InternalStuckError);
}

TEST_CASE("values admit no decomposition") {
  fg::DeclTable t = table_ok("type T struct { } func main() { _ = T{} }");
  CHECK(fg::fg_decompose_all(t, lit("T")).empty());
  CHECK(fg::fg_decompose_all(t, lit("T", {lit("T")})).empty());
}

TEST_CASE("only the leftmost active position decomposes") {
  fg::DeclTable t = table_ok(
      "type U struct { w W } type W struct { } type T struct { a W  b W } "
      "func main() { _ = T{U{W{}}.w, W{}} }");
  // T{U{W{}}.w, W{}}: the first argument holds the only redex.
  auto decomps = fg::fg_decompose_all(t, t.program().main);
  REQUIRE(decomps.size() == 1);
  CHECK(fg::equal(decomps[0].redex, fg::make_select(lit("U", {lit("W")}), "w")));

  // With a redex in both argument positions, the second is not active.
  auto both = fg::make_struct_lit(
      "T", {fg::make_select(lit("U", {lit("W")}), "w"), fg::make_select(lit("U", {lit("W")}), "w")});
  auto decomps2 = fg::fg_decompose_all(t, both);
  REQUIRE(decomps2.size() == 1);
  auto plugged = fg::plug(decomps2[0].context, decomps2[0].redex);
  CHECK(fg::equal(plugged, both));
}

TEST_CASE("every state of the equality trace decomposes uniquely") {
  fg::DeclTable t = table_ok(read_file(corpus_path("sec2.fg")));
  check_deterministic_trace(t, t.program().main, 200);
}

TEST_CASE("every state of the corpus panic and loop traces decomposes uniquely") {
  for (const char* name : {"panic_assert.fg", "loop.fg"}) {
    fg::DeclTable t = table_ok(read_file(corpus_path(name)));
    check_deterministic_trace(t, t.program().main, 200);
  }
}

TEST_CASE("budget monotonicity: value outcomes persist under larger budgets") {
  fg::DeclTable t = table_ok(read_file(corpus_path("sec2.fg")));
  auto small = fg::fg_run(t, t.program().main, 3);
  auto large = fg::fg_run(t, t.program().main, 50);
  REQUIRE(small.kind == fg::FGOutcome::Kind::Value);
  REQUIRE(large.kind == fg::FGOutcome::Kind::Value);
  CHECK(small.steps == large.steps);
  CHECK(*small.value == *large.value);

  auto before = fg::fg_run(t, t.program().main, 2);
  CHECK(before.kind == fg::FGOutcome::Kind::BudgetExhausted);
}

TEST_CASE("substitution of closed values keeps expressions closed along traces") {
  fg::DeclTable t = table_ok(read_file(corpus_path("sec2.fg")));
  fg::ExprPtr e = t.program().main;
  for (int i = 0; i < 50; ++i) {
    CHECK(fg::free_vars(*e).empty());
    auto r = fg::fg_step(t, e);
    auto* s = std::get_if<fg::Stepped>(&r);
    if (s == nullptr) break;
    e = s->next;
  }
}
