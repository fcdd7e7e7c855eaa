#pragma once

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace fgdict::tl {

struct TLExpr;
using TLExprPtr = std::shared_ptr<const TLExpr>;

struct VarE {
  std::string name;
};

// Refers to a translated method binding; disjoint from term variables by
// mangling ('$' never appears in surface identifiers).
struct MethodVarE {
  std::string name;
};

struct ConE {
  std::string name;
};

struct AppE {
  TLExprPtr fn;
  TLExprPtr arg;
};

struct LamE {
  std::string param;
  TLExprPtr body;
};

// Flat pattern: constructor applied to distinct variables. Nested patterns
// are desugared into nested cases before they reach the core syntax.
struct Clause {
  std::string con;
  std::vector<std::string> vars;
  TLExprPtr body;
};

struct CaseE {
  TLExprPtr scrutinee;
  std::vector<Clause> clauses;
};

struct HoleE {};

struct TLExpr {
  std::variant<VarE, MethodVarE, ConE, AppE, LamE, CaseE, HoleE> node;

  template <class T>
  const T* get_if() const {
    return std::get_if<T>(&node);
  }
};

TLExprPtr make_var(std::string name);
TLExprPtr make_method_var(std::string name);
TLExprPtr make_con(std::string name);
TLExprPtr make_app(TLExprPtr fn, TLExprPtr arg);
TLExprPtr make_lam(std::string param, TLExprPtr body);
TLExprPtr make_case(TLExprPtr scrutinee, std::vector<Clause> clauses);
TLExprPtr make_hole();

// K E1 ... En as iterated application.
TLExprPtr apply_all(TLExprPtr fn, const std::vector<TLExprPtr>& args);

// Constructor family for tuples, printed (E1,...,En).
std::string tuple_con(std::size_t arity);
std::optional<std::size_t> tuple_arity(const std::string& con);
TLExprPtr make_tuple(const std::vector<TLExprPtr>& items);

bool equal(const TLExpr& a, const TLExpr& b);
inline bool equal(const TLExprPtr& a, const TLExprPtr& b) { return equal(*a, *b); }

// TL values: fully applied constructor spines, lambdas, and method names.
struct TLValue;
struct ConVal {
  std::string con;
  std::vector<TLValue> args;
};
struct LamVal {
  std::string param;
  TLExprPtr body;
};
struct MethodNameVal {
  std::string name;
};

struct TLValue {
  std::variant<ConVal, LamVal, MethodNameVal> v;

  template <class T>
  const T* get_if() const {
    return std::get_if<T>(&v);
  }
};

bool equal(const TLValue& a, const TLValue& b);

// A term is a value when it is a lambda, a method variable, or a constructor
// applied (possibly partially) to values.
bool is_value(const TLExpr& e);
inline bool is_value(const TLExprPtr& e) { return is_value(*e); }

std::optional<TLValue> to_value(const TLExpr& e);
TLExprPtr value_to_expr(const TLValue& v);

// Top-level method substitution mu, with deterministic binding order.
class MethodBindings {
 public:
  void add(std::string name, TLExprPtr lambda);
  const TLExprPtr* find(const std::string& name) const;
  const std::vector<std::pair<std::string, TLExprPtr>>& ordered() const { return ordered_; }
  std::size_t size() const { return ordered_.size(); }

 private:
  std::vector<std::pair<std::string, TLExprPtr>> ordered_;
  std::map<std::string, std::size_t> index_;
};

struct TLProgram {
  MethodBindings bindings;
  TLExprPtr main;
};

// Free term variables and free method variables, respectively.
struct FreeVars {
  std::set<std::string> term;
  std::set<std::string> method;
};
FreeVars tl_free_vars(const TLExpr& e);
inline FreeVars tl_free_vars(const TLExprPtr& e) { return tl_free_vars(*e); }

std::size_t node_count(const TLExpr& e);

}  // namespace fgdict::tl
