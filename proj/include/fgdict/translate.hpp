#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fgdict/common.hpp"
#include "fgdict/fg_ast.hpp"
#include "fgdict/fg_statics.hpp"
#include "fgdict/tl_ast.hpp"

namespace fgdict::trans {

// Name mangling. '$' cannot occur in surface identifiers, so method-binding
// names are disjoint from term variables; the K_ prefix keeps constructor
// names injective in the type name.
std::string mangle_con(const fg::TypeName& t);
std::string mangle_method(const std::string& method, const fg::TypeName& receiver);

struct TranslationError {
  enum class Kind {
    UnknownVar,
    NotAStruct,
    NotAnInterface,
    NoSuchField,
    NoSuchMethod,
    NotASubtype,
    AssertOnStruct,
    UndefinedType,
  };
  Kind kind;
  std::string where;
  std::string detail;

  std::string to_string() const;
};

const char* translation_error_kind_name(TranslationError::Kind k);

enum class Rule {
  TdVar,
  TdStruct,
  TdAccess,
  TdCallStruct,
  TdCallIface,
  TdAssert,
  TdSub,
  TdConsStructIface,
  TdConsIfaceIface,
  TdDestrIfaceStruct,
  TdDestrIfaceIface,
  TdMethod,
  TdProg,
};
constexpr std::size_t kRuleCount = 13;
const char* rule_name(Rule r);

struct RuleCounters {
  std::array<std::uint64_t, kRuleCount> fired{};

  void bump(Rule r) { ++fired[static_cast<std::size_t>(r)]; }
  std::uint64_t count(Rule r) const { return fired[static_cast<std::size_t>(r)]; }
  RuleCounters& operator+=(const RuleCounters& other);
};

using TypeEnv = std::vector<std::pair<std::string, fg::TypeName>>;

template <class T>
using TransResult = Expected<T, TranslationError>;

// Synthesized (minimal) type together with the translated term.
struct TypedExpr {
  fg::TypeName type;
  tl::TLExprPtr expr;
};

struct TranslateResult {
  tl::TLProgram program;
  fg::TypeName main_type;
  RuleCounters counters;
};

// Algorithmic, coercion-inserting renderings of the declarative rules. All
// share a per-call fresh-variable counter; translate_program resets it once,
// so identical programs translate to structurally identical results.
class Translator {
 public:
  explicit Translator(const fg::DeclTable& table) : table_(table) {}

  TransResult<TypedExpr> expr(const TypeEnv& env, const fg::ExprPtr& e);
  TransResult<tl::TLExprPtr> coerce(const fg::TypeName& from, const fg::TypeName& to,
                                    const tl::TLExprPtr& e);
  TransResult<tl::TLExprPtr> upcast(const fg::TypeName& t, const fg::TypeName& iface);
  TransResult<tl::TLExprPtr> downcast(const fg::TypeName& iface, const fg::TypeName& target);
  TransResult<std::pair<std::string, tl::TLExprPtr>> method(const fg::MethodDecl& decl);
  TransResult<TranslateResult> program();

  const RuleCounters& counters() const { return counters_; }

 private:
  const fg::DeclTable& table_;
  RuleCounters counters_;
  std::uint64_t fresh_ = 0;

  std::string fresh_var();
};

TransResult<TypedExpr> translate_expr(const fg::DeclTable& table, const TypeEnv& env,
                                      const fg::ExprPtr& e);
TransResult<tl::TLExprPtr> coerce(const fg::DeclTable& table, const fg::TypeName& from,
                                  const fg::TypeName& to, const tl::TLExprPtr& e);
TransResult<tl::TLExprPtr> build_upcast(const fg::DeclTable& table, const fg::TypeName& t,
                                        const fg::TypeName& iface);
TransResult<tl::TLExprPtr> build_downcast(const fg::DeclTable& table, const fg::TypeName& iface,
                                          const fg::TypeName& target);
TransResult<std::pair<std::string, tl::TLExprPtr>> translate_method(const fg::DeclTable& table,
                                                                    const fg::MethodDecl& decl);

// Requires check_conditions(table) to be empty.
TransResult<TranslateResult> translate_program(const fg::DeclTable& table);

// Convenience entry: builds a table, checks conditions, then translates.
struct TranslateFailure {
  std::vector<fg::WfViolation> violations;           // nonempty when well-formedness failed
  std::optional<TranslationError> error;             // set when translation failed

  std::string to_string() const;
};
Expected<TranslateResult, TranslateFailure> translate_checked(const fg::Program& p);

}  // namespace fgdict::trans
