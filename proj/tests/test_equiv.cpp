#include "doctest.h"

#include "fgdict/equiv.hpp"
#include "test_util.hpp"

using namespace fgdict;
using namespace testutil;
using equiv::DiffVerdict;

namespace {

const char* kSec2File = "sec2.fg";

tl::TLValue conv(const char* k, std::vector<tl::TLValue> args) {
  return tl::TLValue{tl::ConVal{k, std::move(args)}};
}

tl::TLValue tup(std::vector<tl::TLValue> args) {
  std::string name = tl::tuple_con(args.size());
  return tl::TLValue{tl::ConVal{name, std::move(args)}};
}

tl::TLValue method(const char* name) { return tl::TLValue{tl::MethodNameVal{name}}; }

}  // namespace

TEST_CASE("a zero-field struct corresponds to its tagged empty tuple") {
  fg::DeclTable t = table_ok("type T struct { } func main() { _ = T{} }");
  fg::FGValue v{"T", {}};
  CHECK(equiv::value_corresponds(t, "T", v, conv("K_T", {tup({})})).ok);
  CHECK_FALSE(equiv::value_corresponds(t, "T", v, conv("K_T", {})).ok);
  CHECK_FALSE(equiv::value_corresponds(t, "T", v, conv("K_U", {tup({})})).ok);
  CHECK_THROWS_AS(equiv::value_corresponds(t, "Gone", v, conv("K_T", {tup({})})),
                  std::invalid_argument);
}

TEST_CASE("an interface value pairs the payload with the mangled dictionary") {
  fg::DeclTable t = table_ok(read_file(corpus_path(kSec2File)));
  fg::FGValue val{"Val", {}};
  fg::FGValue int_v{"Int", {val}};
  tl::TLValue int_tl = conv("K_Int", {tup({conv("K_Val", {tup({})})})});

  auto good = equiv::value_corresponds(t, "Eq", int_v, conv("K_Eq", {tup({int_tl, method("eq$Int")})}));
  CHECK(good.ok);

  auto wrong_name = equiv::value_corresponds(
      t, "Eq", int_v, conv("K_Eq", {tup({int_tl, method("other$T")})}));
  CHECK_FALSE(wrong_name.ok);
  CHECK(wrong_name.explanation.find("slot 1") != std::string::npos);

  auto not_a_name =
      equiv::value_corresponds(t, "Eq", int_v, conv("K_Eq", {tup({int_tl, int_tl})}));
  CHECK_FALSE(not_a_name.ok);

  auto wrong_payload = equiv::value_corresponds(
      t, "Eq", fg::FGValue{"Val", {}}, conv("K_Eq", {tup({int_tl, method("eq$Int")})}));
  CHECK_FALSE(wrong_payload.ok);
}

TEST_CASE("struct correspondence recurses through interface-typed fields") {
  fg::DeclTable t = table_ok(read_file(corpus_path(kSec2File)));
  fg::FGValue int_v{"Int", {fg::FGValue{"Val", {}}}};
  fg::FGValue box_v{"Box", {int_v}};
  tl::TLValue int_tl = conv("K_Int", {tup({conv("K_Val", {tup({})})})});
  tl::TLValue iface = conv("K_Eq", {tup({int_tl, method("eq$Int")})});
  CHECK(equiv::value_corresponds(t, "Box", box_v, conv("K_Box", {tup({iface})})).ok);
  // A raw struct in an interface-typed field position does not correspond.
  CHECK_FALSE(equiv::value_corresponds(t, "Box", box_v, conv("K_Box", {tup({int_tl})})).ok);
}

TEST_CASE("the equality corpus program agrees end to end") {
  auto p = parse_ok(read_file(corpus_path(kSec2File)));
  auto verdict = equiv::diff_run(p, {100, 10'000});
  REQUIRE(verdict.ok());
  CHECK(verdict.value().kind == DiffVerdict::Kind::AgreeValue);
  CHECK(verdict.value().main_type == "Bool");
  CHECK(verdict.value().fg_outcome.steps == 3);
  CHECK(verdict.value().tl_outcome.steps <= 200);
}

TEST_CASE("the loop program is inconclusive on both sides") {
  auto p = parse_ok(read_file(corpus_path("loop.fg")));
  auto verdict = equiv::diff_run(p, {1000, 10'000});
  REQUIRE(verdict.ok());
  CHECK(verdict.value().kind == DiffVerdict::Kind::Inconclusive);
}

TEST_CASE("the panic corpus program panics on both sides") {
  auto p = parse_ok(read_file(corpus_path("panic_assert.fg")));
  auto verdict = equiv::diff_run(p, {1000, 10'000});
  REQUIRE(verdict.ok());
  CHECK(verdict.value().kind == DiffVerdict::Kind::AgreePanic);
}

TEST_CASE("ill-formed inputs surface their violations instead of a verdict") {
  auto p = parse_ok("type T struct { next T } func main() { _ = T{} }");
  auto verdict = equiv::diff_run(p, {10, 100});
  REQUIRE_FALSE(verdict.ok());
  REQUIRE(verdict.error().violations.size() == 1);
  CHECK(verdict.error().violations[0].kind == fg::WfViolation::Kind::RecursiveStruct);
}

TEST_CASE("mixed timeouts are loud violations and retries resolve them") {
  auto p = parse_ok(read_file(corpus_path(kSec2File)));
  auto table = fg::DeclTable::build(p);
  REQUIRE(table.ok());
  auto translated = trans::translate_program(table.value());
  REQUIRE(translated.ok());

  // The source needs three steps; a budget of one exhausts it while the
  // target finishes, which must be reported loudly.
  auto starved = equiv::diff_run(table.value(), translated.value(), {1, 10'000});
  CHECK(starved.kind == DiffVerdict::Kind::FGTimeoutTLValue);
  CHECK(starved.is_violation());
  CHECK(starved.detail.find("retry") != std::string::npos);

  auto retried = equiv::diff_run_retrying(table.value(), translated.value(), {1, 10'000});
  CHECK(retried.verdict.kind == DiffVerdict::Kind::AgreeValue);
  CHECK(retried.retries == 1);

  // The opposite starvation: target budget too small.
  auto tl_starved = equiv::diff_run(table.value(), translated.value(), {5, 5});
  CHECK(tl_starved.kind == DiffVerdict::Kind::FGValueTLTimeout);

  CHECK_THROWS_AS(equiv::diff_run(table.value(), translated.value(), {10, 5}),
                  std::invalid_argument);
}

TEST_CASE("every value reachable in the corpus corresponds at its synthesized type") {
  // Translate each corpus literal and evaluate it; the result must
  // correspond to the FG value at the synthesized type.
  fg::DeclTable t = table_ok(read_file(corpus_path(kSec2File)));
  auto translated = trans::translate_program(t);
  REQUIRE(translated.ok());
  const auto& mu = translated.value().program.bindings;

  auto check_literal = [&](const fg::ExprPtr& lit) {
    auto typed = trans::translate_expr(t, {}, lit);
    REQUIRE(typed.ok());
    auto fg_out = fg::fg_run(t, lit, 1000);
    REQUIRE(fg_out.kind == fg::FGOutcome::Kind::Value);
    auto tl_out = tl::tl_run_expr(mu, typed.value().expr, 10'000);
    REQUIRE(tl_out.kind == tl::TLOutcome::Kind::Value);
    CHECK(equiv::value_corresponds(t, typed.value().type, *fg_out.value, *tl_out.value).ok);
  };

  auto val = fg::make_struct_lit("Val", {});
  auto int_lit = fg::make_struct_lit("Int", {val});
  check_literal(val);
  check_literal(int_lit);
  check_literal(fg::make_struct_lit("Box", {int_lit}));
  check_literal(fg::make_struct_lit("Box", {fg::make_struct_lit("Int", {fg::make_struct_lit("Val", {})})}));
}
