#pragma once

#include <memory>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace fgdict::fg {

// Whether a name denotes a struct or an interface is decided by declaration
// lookup, never by spelling.
using TypeName = std::string;

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct VarExpr {
  std::string name;
};

struct CallExpr {
  ExprPtr receiver;
  std::string method;
  std::vector<ExprPtr> args;
};

struct StructLitExpr {
  TypeName type_name;
  std::vector<ExprPtr> args;
};

struct SelectExpr {
  ExprPtr receiver;
  std::string field;
};

struct AssertExpr {
  ExprPtr receiver;
  TypeName type_name;
};

// Evaluation-context hole. Never produced by the parser; only decomposition
// results contain it, and exactly once.
struct HoleExpr {};

struct Expr {
  std::variant<VarExpr, CallExpr, StructLitExpr, SelectExpr, AssertExpr, HoleExpr> node;

  template <class T>
  const T* get_if() const {
    return std::get_if<T>(&node);
  }
};

ExprPtr make_var(std::string name);
ExprPtr make_call(ExprPtr receiver, std::string method, std::vector<ExprPtr> args);
ExprPtr make_struct_lit(TypeName type_name, std::vector<ExprPtr> args);
ExprPtr make_select(ExprPtr receiver, std::string field);
ExprPtr make_assert(ExprPtr receiver, TypeName type_name);
ExprPtr make_hole();

bool equal(const Expr& a, const Expr& b);
inline bool equal(const ExprPtr& a, const ExprPtr& b) { return equal(*a, *b); }

struct MethodSignature {
  std::vector<std::pair<std::string, TypeName>> params;
  TypeName result;

  bool operator==(const MethodSignature&) const = default;
};

struct MethodSpec {
  std::string name;
  MethodSignature sig;

  bool operator==(const MethodSpec&) const = default;
};

struct StructLiteral {
  std::vector<std::pair<std::string, TypeName>> fields;
};

struct InterfaceLiteral {
  std::vector<MethodSpec> specs;
};

struct TypeDecl {
  TypeName name;
  std::variant<StructLiteral, InterfaceLiteral> literal;

  bool is_struct() const { return std::holds_alternative<StructLiteral>(literal); }
  const StructLiteral& as_struct() const { return std::get<StructLiteral>(literal); }
  const InterfaceLiteral& as_interface() const { return std::get<InterfaceLiteral>(literal); }
};

struct MethodDecl {
  std::string receiver_var;
  TypeName receiver_type;
  std::string name;
  MethodSignature sig;
  ExprPtr body;
};

using Decl = std::variant<TypeDecl, MethodDecl>;

struct Program {
  std::vector<Decl> decls;
  ExprPtr main;
};

bool equal(const Program& a, const Program& b);

// FG values are struct-literal trees.
struct FGValue {
  TypeName type_name;
  std::vector<FGValue> args;

  bool operator==(const FGValue&) const = default;
};

bool is_value(const Expr& e);
inline bool is_value(const ExprPtr& e) { return is_value(*e); }

// Converts a value expression to an FGValue; precondition: is_value(e).
FGValue to_value(const Expr& e);
ExprPtr value_to_expr(const FGValue& v);

// Replaces free variables by value expressions. FG expressions contain no
// binders, so no renaming is needed.
ExprPtr substitute(const ExprPtr& e, const std::vector<std::pair<std::string, ExprPtr>>& binds);

// Free variables of e, in first-occurrence order.
std::vector<std::string> free_vars(const Expr& e);

std::size_t node_count(const Expr& e);

}  // namespace fgdict::fg
