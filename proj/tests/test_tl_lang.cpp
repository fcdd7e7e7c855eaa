#include "doctest.h"

#include "fgdict/tl_interp.hpp"
#include "fgdict/tl_parser.hpp"
#include "fgdict/tl_printer.hpp"

using namespace fgdict;
using namespace fgdict::tl;

namespace {

TLProgram parse_ok(const std::string& src) {
  auto r = parse_program(src);
  if (const auto* err = std::get_if<TLSyntaxError>(&r)) FAIL(err->to_string());
  return std::get<TLProgram>(r);
}

TLExprPtr con0(const char* k) { return make_app(make_con(k), make_con(tuple_con(0))); }

}  // namespace

TEST_CASE("beta reduction substitutes the argument") {
  MethodBindings mu;
  auto e = make_app(make_lam("x", make_var("x")), make_con("K_A"));
  auto r = tl_step(mu, e);
  auto* s = std::get_if<Stepped>(&r);
  REQUIRE(s != nullptr);
  CHECK(equal(s->next, make_con("K_A")));
}

TEST_CASE("case projection binds pattern variables to constructor arguments") {
  MethodBindings mu;
  auto pair = make_tuple({make_con("K_A"), make_con("K_B")});
  auto e = make_case(pair, {Clause{tuple_con(2), {"x1", "x2"}, make_var("x2")}});
  auto r = tl_step(mu, e);
  auto* s = std::get_if<Stepped>(&r);
  REQUIRE(s != nullptr);
  CHECK(equal(s->next, make_con("K_B")));
}

TEST_CASE("method variables rewrite through the bindings at application position") {
  MethodBindings mu;
  mu.add("id$T", make_lam("x", make_var("x")));
  auto e = make_app(make_method_var("id$T"), con0("K_T"));
  auto r = tl_step(mu, e);
  auto* s = std::get_if<Stepped>(&r);
  REQUIRE(s != nullptr);
  CHECK(equal(s->next, make_app(make_lam("x", make_var("x")), con0("K_T"))));

  // A bare method variable is already a value; the rule fires only on Y V.
  CHECK(std::holds_alternative<AtValue>(tl_step(mu, make_method_var("id$T"))));
}

TEST_CASE("unbound method variables at application position are an error") {
  MethodBindings mu;
  CHECK_THROWS_AS(tl_step(mu, make_app(make_method_var("gone$T"), con0("K_T"))),
                  UnboundMethodVarError);
}

TEST_CASE("constructor applications are values and normalize to spines") {
  auto e = make_app(make_app(make_con("K_P"), make_con("K_A")), make_con("K_B"));
  CHECK(is_value(*e));
  auto v = to_value(*e);
  REQUIRE(v.has_value());
  const auto* c = v->get_if<ConVal>();
  REQUIRE(c != nullptr);
  CHECK(c->con == "K_P");
  REQUIRE(c->args.size() == 2);
  CHECK(c->args[0].get_if<ConVal>()->con == "K_A");
  CHECK(c->args[1].get_if<ConVal>()->con == "K_B");

  // A partially applied constructor is a value and stays applicable.
  CHECK(is_value(*make_app(make_con("K_P"), make_con("K_A"))));
  // An application headed by a non-constructor value is not a value.
  CHECK_FALSE(is_value(*make_app(make_method_var("m$T"), make_con("K_A"))));
}

TEST_CASE("constructor arguments evaluate left to right") {
  MethodBindings mu;
  auto redex = make_app(make_lam("x", make_var("x")), make_con("K_A"));
  auto e = make_app(make_app(make_con("K_P"), redex), redex);
  auto r = tl_step(mu, e);
  auto* s = std::get_if<Stepped>(&r);
  REQUIRE(s != nullptr);
  CHECK(equal(s->next, make_app(make_app(make_con("K_P"), make_con("K_A")), redex)));
}

TEST_CASE("running a value takes zero steps") {
  TLProgram p;
  p.main = con0("K_T");
  auto out = tl_run(p, 100);
  CHECK(out.kind == TLOutcome::Kind::Value);
  CHECK(out.steps == 0);
}

TEST_CASE("a case with no matching clause panics immediately") {
  TLProgram p;
  p.main = make_case(make_con("K_A"), {Clause{"K_B", {}, make_con("K_B")}});
  auto out = tl_run(p, 100);
  CHECK(out.kind == TLOutcome::Kind::Panic);
  CHECK(out.steps == 0);
}

TEST_CASE("a lambda scrutinee is stuck, not a panic") {
  MethodBindings mu;
  auto e = make_case(make_lam("x", make_var("x")), {Clause{"K_B", {}, make_con("K_B")}});
  CHECK(std::holds_alternative<Stuck>(tl_step(mu, e)));
}

TEST_CASE("free variable computation distinguishes term and method variables") {
  auto fv1 = tl_free_vars(make_lam("x", make_var("x")));
  CHECK(fv1.term.empty());
  CHECK(fv1.method.empty());

  auto fv2 = tl_free_vars(make_app(make_method_var("eq$Int"), make_var("x")));
  CHECK(fv2.term == std::set<std::string>{"x"});
  CHECK(fv2.method == std::set<std::string>{"eq$Int"});

  auto fv3 = tl_free_vars(
      make_case(make_var("s"), {Clause{"K_A", {"a", "b"}, make_app(make_var("a"), make_var("c"))}}));
  CHECK(fv3.term == std::set<std::string>{"s", "c"});
}

TEST_CASE("values admit no decomposition") {
  MethodBindings mu;
  CHECK(tl_decompose_all(mu, con0("K_T")).empty());
  CHECK(tl_decompose_all(mu, make_lam("x", make_var("x"))).empty());
}

TEST_CASE("the function position resolves before the argument") {
  MethodBindings mu;
  auto inner = make_app(make_lam("x", make_var("x")), make_con("K_A"));  // redex
  auto arg = make_app(make_lam("y", make_var("y")), make_con("K_B"));   // also a redex
  auto e = make_app(inner, arg);
  auto decomps = tl_decompose_all(mu, e);
  REQUIRE(decomps.size() == 1);
  CHECK(equal(decomps[0].redex, inner));
  CHECK(equal(plug(decomps[0].context, decomps[0].redex), e));

  auto contracted = tl_contract(mu, decomps[0].redex);
  REQUIRE(contracted.has_value());
  auto r = tl_step(mu, e);
  CHECK(equal(plug(decomps[0].context, *contracted), std::get<Stepped>(r).next));
}

TEST_CASE("stepping preserves closedness modulo the bindings") {
  MethodBindings mu;
  mu.add("dup$T", make_lam("x", make_tuple({make_var("x"), make_var("x")})));
  TLExprPtr e = make_app(make_method_var("dup$T"),
                         make_app(make_lam("y", make_var("y")), con0("K_T")));
  for (int i = 0; i < 20; ++i) {
    auto fv = tl_free_vars(*e);
    CHECK(fv.term.empty());
    for (const auto& m : fv.method) CHECK(mu.find(m) != nullptr);
    auto r = tl_step(mu, e);
    auto* s = std::get_if<Stepped>(&r);
    if (s == nullptr) break;
    e = s->next;
  }
}

TEST_CASE("substitution renames binders that would capture") {
  std::uint64_t fresh = 0;
  // (lambda y. x) with x := y must not capture the free y.
  auto e = make_lam("y", make_var("x"));
  auto out = substitute(e, {{"x", make_var("y")}}, fresh);
  const auto* lam = out->get_if<LamE>();
  REQUIRE(lam != nullptr);
  CHECK(lam->param != "y");
  CHECK(equal(lam->body, make_var("y")));
}

TEST_CASE("program text parses and prints inversely") {
  const char* src =
      "let\n"
      "  eq$Int = \\this. \\%1. case %1 of { (that,) -> K_Bool ((K_True (),)) }\n"
      "in\n"
      "case K_Eq ((K_Int ((),), eq$Int)) of { K_Eq %2 -> case %2 of { (x, m) -> (m x) ((x,)) } }\n";
  TLProgram p = parse_ok(src);
  std::string printed = print_program(p);
  TLProgram q = parse_ok(printed);
  CHECK(equal(p.main, q.main));
  REQUIRE(p.bindings.size() == q.bindings.size());
  for (std::size_t i = 0; i < p.bindings.ordered().size(); ++i) {
    CHECK(p.bindings.ordered()[i].first == q.bindings.ordered()[i].first);
    CHECK(equal(p.bindings.ordered()[i].second, q.bindings.ordered()[i].second));
  }
}

TEST_CASE("tuple notation distinguishes arities") {
  TLProgram p0 = parse_ok("()");
  CHECK(equal(p0.main, make_con(tuple_con(0))));
  TLProgram p1 = parse_ok("(K_A,)");
  CHECK(equal(p1.main, make_tuple({make_con("K_A")})));
  TLProgram p2 = parse_ok("(K_A)");
  CHECK(equal(p2.main, make_con("K_A")));  // plain parentheses
  TLProgram p3 = parse_ok("(K_A, K_B)");
  CHECK(equal(p3.main, make_tuple({make_con("K_A"), make_con("K_B")})));
}

TEST_CASE("lambda tuple binders desugar to a case on a fresh variable") {
  TLProgram p = parse_ok("\\(a, b). a");
  const auto* lam = p.main->get_if<LamE>();
  REQUIRE(lam != nullptr);
  const auto* c = lam->body->get_if<CaseE>();
  REQUIRE(c != nullptr);
  REQUIRE(c->clauses.size() == 1);
  CHECK(c->clauses[0].con == tuple_con(2));
  CHECK(c->clauses[0].vars == std::vector<std::string>{"a", "b"});
  CHECK(equal(c->scrutinee, make_var(lam->param)));
}

TEST_CASE("nested constructor-tuple patterns desugar to two cases") {
  TLProgram p = parse_ok("case K_Eq ((K_A,)) of { K_Eq (v,) -> v }");
  const auto* outer = p.main->get_if<CaseE>();
  REQUIRE(outer != nullptr);
  REQUIRE(outer->clauses.size() == 1);
  CHECK(outer->clauses[0].con == "K_Eq");
  REQUIRE(outer->clauses[0].vars.size() == 1);
  const auto* inner = outer->clauses[0].body->get_if<CaseE>();
  REQUIRE(inner != nullptr);
  CHECK(inner->clauses[0].con == tuple_con(1));

  auto out = tl_run(p, 100);
  REQUIRE(out.kind == TLOutcome::Kind::Value);
  CHECK(out.value->get_if<ConVal>()->con == "K_A");
}

TEST_CASE("printed expressions always parse back to the same tree") {
  std::vector<TLExprPtr> samples = {
      con0("K_T"),
      make_tuple({make_con("K_A"), make_tuple({}), make_tuple({make_con("K_B")})}),
      make_lam("x", make_app(make_var("x"), make_tuple({make_var("x"), make_var("x")}))),
      make_case(make_app(make_lam("x", make_var("x")), con0("K_T")),
                {Clause{"K_T", {"t"}, make_var("t")}, Clause{tuple_con(0), {}, make_con("K_T")}}),
      make_app(make_app(make_method_var("m$T"), con0("K_T")), make_tuple({con0("K_T")})),
      make_app(make_con("Tuple2"), make_con("K_A")),  // partial tuple stays an application
  };
  for (const auto& e : samples) {
    TLProgram back = parse_ok(print_expr(*e));
    CHECK_MESSAGE(equal(back.main, e), "round trip failed for ", print_expr(*e));
  }
}

TEST_CASE("budget monotonicity holds on the target side") {
  MethodBindings mu;
  mu.add("spin$T", make_lam("x", make_app(make_method_var("spin$T"), make_var("x"))));
  TLProgram spin;
  spin.bindings = mu;
  spin.main = make_app(make_method_var("spin$T"), con0("K_T"));
  auto a = tl_run(spin, 100);
  auto b = tl_run(spin, 1000);
  CHECK(a.kind == TLOutcome::Kind::BudgetExhausted);
  CHECK(b.kind == TLOutcome::Kind::BudgetExhausted);

  TLProgram quick;
  quick.main = make_app(make_lam("x", make_var("x")), con0("K_T"));
  auto c = tl_run(quick, 1);
  auto d = tl_run(quick, 50);
  REQUIRE(c.kind == TLOutcome::Kind::Value);
  REQUIRE(d.kind == TLOutcome::Kind::Value);
  CHECK(c.steps == d.steps);
  CHECK(equal(*c.value, *d.value));
}
