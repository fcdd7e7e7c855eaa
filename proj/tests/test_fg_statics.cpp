#include "doctest.h"

#include <set>

#include "fgdict/fg_statics.hpp"
#include "test_util.hpp"

using namespace fgdict;
using namespace testutil;

namespace {

const char* kSec2 = R"(
type Val struct { }
type True struct { }
type False struct { }
type Bool interface { }
type Int struct { val Val }
type Eq interface { eq(that Eq) Bool }
type Box struct { item Eq }
func (this Int) eq(that Eq) Bool { return True{} }
func main() { _ = Box{Int{Val{}}}.item.eq(Box{Int{Val{}}}.item) }
)";

std::vector<fg::TypeName> declared_types(const fg::DeclTable& t) {
  std::vector<fg::TypeName> out;
  for (const auto& d : t.program().decls)
    if (const auto* td = std::get_if<fg::TypeDecl>(&d)) out.push_back(td->name);
  return out;
}

}  // namespace

TEST_CASE("build_table indexes the equality program") {
  fg::DeclTable t = table_ok(kSec2);
  CHECK(t.is_struct("Int"));
  CHECK(t.is_interface("Eq"));
  CHECK(t.method_lookup("eq", "Int").ok());
  CHECK(fg::check_conditions(t).empty());
}

TEST_CASE("duplicate type declarations are rejected at build") {
  auto r = fg::DeclTable::build(parse_ok("type T struct { } type T struct { } func main() { _ = T{} }"));
  REQUIRE_FALSE(r.ok());
  REQUIRE(r.error().size() == 1);
  CHECK(r.error()[0].kind == fg::WfViolation::Kind::DupTypeDecl);
  CHECK(r.error()[0].where == "T");
}

TEST_CASE("duplicate receiver methods violate FG4") {
  auto r = fg::DeclTable::build(parse_ok(
      "type T struct { } func (x T) m() T { return x } func (y T) m() T { return y } "
      "func main() { _ = T{} }"));
  REQUIRE_FALSE(r.ok());
  CHECK(r.error()[0].kind == fg::WfViolation::Kind::DupReceiverMethod);
}

TEST_CASE("recursive structs violate FG1") {
  fg::DeclTable t = table_ok("type T struct { next T } func main() { _ = T{} }");
  auto vs = fg::check_conditions(t);
  REQUIRE(vs.size() == 1);
  CHECK(vs[0].kind == fg::WfViolation::Kind::RecursiveStruct);
  CHECK(vs[0].where == "T");
}

TEST_CASE("mutually recursive structs violate FG1") {
  fg::DeclTable t = table_ok(
      "type T struct { u U } type U struct { t T } func main() { _ = T{U{}} }");
  auto vs = fg::check_conditions(t);
  std::set<std::string> names;
  for (const auto& v : vs) {
    CHECK(v.kind == fg::WfViolation::Kind::RecursiveStruct);
    names.insert(v.where);
  }
  CHECK(names == std::set<std::string>{"T", "U"});
}

TEST_CASE("interface-typed fields do not create FG1 cycles by default") {
  const char* src =
      "type I interface { } type T struct { i I } func main() { _ = T{T{T{}}} }";
  fg::DeclTable t = table_ok(src);
  CHECK(fg::check_conditions(t).empty());

  fg::CheckOptions strict;
  strict.strict_interface_cycles = true;
  auto vs = fg::check_conditions(t, strict);
  REQUIRE_FALSE(vs.empty());
  CHECK(vs[0].kind == fg::WfViolation::Kind::RecursiveStruct);
}

TEST_CASE("duplicate fields violate FG2") {
  fg::DeclTable t = table_ok("type U struct { } type T struct { a U  a U } func main() { _ = U{} }");
  auto vs = fg::check_conditions(t);
  REQUIRE(vs.size() == 1);
  CHECK(vs[0].kind == fg::WfViolation::Kind::DupField);
  CHECK(vs[0].where == "T");
}

TEST_CASE("duplicate interface specifications violate FG3") {
  fg::DeclTable t = table_ok(
      "type U struct { } type I interface { m() U  m() U } func main() { _ = U{} }");
  auto vs = fg::check_conditions(t);
  REQUIRE(vs.size() == 1);
  CHECK(vs[0].kind == fg::WfViolation::Kind::DupMethodSpec);
}

TEST_CASE("undefined types are reported wherever they are mentioned") {
  fg::DeclTable t = table_ok("type T struct { u Missing } func main() { _ = Gone{} }");
  auto vs = fg::check_conditions(t);
  REQUIRE(vs.size() == 2);
  CHECK(vs[0].kind == fg::WfViolation::Kind::UndefinedType);
  CHECK(vs[1].kind == fg::WfViolation::Kind::UndefinedType);
}

TEST_CASE("interface receivers are rejected") {
  fg::DeclTable t = table_ok(
      "type I interface { } type T struct { } func (x I) m() T { return T{} } "
      "func main() { _ = T{} }");
  auto vs = fg::check_conditions(t);
  REQUIRE(vs.size() == 1);
  CHECK(vs[0].kind == fg::WfViolation::Kind::ReceiverNotStruct);
}

TEST_CASE("methods returns interface specs in declaration order") {
  fg::DeclTable t = table_ok(kSec2);
  auto specs = t.methods("Eq");
  REQUIRE(specs.ok());
  REQUIRE(specs.value().size() == 1);
  CHECK(specs.value()[0].name == "eq");
  CHECK(specs.value()[0].sig.result == "Bool");

  auto order = table_ok(
      "type T struct { } type I interface { m1() T  m2() T } "
      "func main() { _ = T{} }");
  auto list = order.methods("I");
  REQUIRE(list.ok());
  REQUIRE(list.value().size() == 2);
  CHECK(list.value()[0].name == "m1");
  CHECK(list.value()[1].name == "m2");
}

TEST_CASE("methods of a struct follow func declaration order") {
  fg::DeclTable t = table_ok(
      "type T struct { } "
      "func (x T) z() T { return x } func (x T) a() T { return x } "
      "func main() { _ = T{} }");
  auto list = t.methods("T");
  REQUIRE(list.ok());
  REQUIRE(list.value().size() == 2);
  CHECK(list.value()[0].name == "z");
  CHECK(list.value()[1].name == "a");

  auto none = t.methods("Gone");
  CHECK_FALSE(none.ok());
  CHECK(none.error().kind == fg::WfViolation::Kind::UndefinedType);

  fg::DeclTable plain = table_ok("type T struct { } func main() { _ = T{} }");
  CHECK(plain.methods("T").value().empty());
}

TEST_CASE("subtyping follows sub-struct-refl and sub-iface") {
  fg::DeclTable t = table_ok(kSec2);
  CHECK(t.subtype("Int", "Eq").value());
  CHECK(t.subtype("Int", "Int").value());
  CHECK(t.subtype("Eq", "Bool").value());   // superset of the empty spec set
  CHECK(t.subtype("Eq", "Eq").value());
  CHECK_FALSE(t.subtype("Val", "Eq").value());
  CHECK_FALSE(t.subtype("Int", "Val").value());  // distinct structs never relate
  CHECK_FALSE(t.subtype("Eq", "Int").value());   // interfaces are not below structs
  CHECK_FALSE(t.subtype("Int", "Gone").ok());
}

TEST_CASE("spec equality for subtyping includes parameter names") {
  fg::DeclTable t = table_ok(
      "type T struct { } "
      "type I interface { m(a T) T } "
      "func (x T) m(b T) T { return x } "
      "func main() { _ = T{} }");
  // T's method spec is m(b T) T; I wants m(a T) T. Literal equality fails.
  CHECK_FALSE(t.subtype("T", "I").value());
  auto warnings = fg::param_name_lint(t);
  REQUIRE(warnings.size() == 1);
}

TEST_CASE("method_lookup finds the unique declaration or fails") {
  fg::DeclTable t = table_ok(kSec2);
  auto found = t.method_lookup("eq", "Int");
  REQUIRE(found.ok());
  CHECK(found.value()->receiver_var == "this");
  CHECK_FALSE(t.method_lookup("eq", "Bool").ok());
  CHECK_FALSE(t.method_lookup("gone", "Int").ok());
}

TEST_CASE("subtype is reflexive and transitive over every corpus program") {
  for (const auto& path : corpus_files("")) {
    fg::DeclTable t = table_ok(read_file(path));
    auto types = declared_types(t);
    for (const auto& a : types) {
      CHECK_MESSAGE(t.subtype(a, a).value(), "reflexivity failed for ", a, " in ", path);
    }
    for (const auto& a : types)
      for (const auto& b : types)
        for (const auto& c : types) {
          if (t.subtype(a, b).value() && t.subtype(b, c).value()) {
            CHECK_MESSAGE(t.subtype(a, c).value(), "transitivity failed: ", a, " <: ", b, " <: ",
                          c, " in ", path);
          }
        }
  }
}

TEST_CASE("spec-set containment coincides with subtyping for struct/interface pairs") {
  for (const auto& path : corpus_files("")) {
    fg::DeclTable t = table_ok(read_file(path));
    for (const auto& s : t.struct_order()) {
      for (const auto& name : declared_types(t)) {
        if (!t.is_interface(name)) continue;
        const auto have = t.methods(s).value();
        bool contained = true;
        for (const auto& spec : t.methods(name).value()) {
          if (std::find(have.begin(), have.end(), spec) == have.end()) contained = false;
        }
        CHECK(contained == t.subtype(s, name).value());
      }
    }
  }
}
