#include "fgdict/translate.hpp"

#include <algorithm>
#include <sstream>

#include "fgdict/fg_printer.hpp"

namespace fgdict::trans {

using fg::DeclTable;
using fg::MethodSpec;
using fg::TypeName;
using tl::TLExprPtr;

std::string mangle_con(const TypeName& t) { return "K_" + t; }

std::string mangle_method(const std::string& method, const TypeName& receiver) {
  return method + "$" + receiver;
}

const char* translation_error_kind_name(TranslationError::Kind k) {
  switch (k) {
    case TranslationError::Kind::UnknownVar: return "UnknownVar";
    case TranslationError::Kind::NotAStruct: return "NotAStruct";
    case TranslationError::Kind::NotAnInterface: return "NotAnInterface";
    case TranslationError::Kind::NoSuchField: return "NoSuchField";
    case TranslationError::Kind::NoSuchMethod: return "NoSuchMethod";
    case TranslationError::Kind::NotASubtype: return "NotASubtype";
    case TranslationError::Kind::AssertOnStruct: return "AssertOnStruct";
    case TranslationError::Kind::UndefinedType: return "UndefinedType";
  }
  return "?";
}

std::string TranslationError::to_string() const {
  std::ostringstream os;
  os << translation_error_kind_name(kind) << " at " << where;
  if (!detail.empty()) os << ": " << detail;
  return os.str();
}

const char* rule_name(Rule r) {
  switch (r) {
    case Rule::TdVar: return "td-var";
    case Rule::TdStruct: return "td-struct";
    case Rule::TdAccess: return "td-access";
    case Rule::TdCallStruct: return "td-call-struct";
    case Rule::TdCallIface: return "td-call-iface";
    case Rule::TdAssert: return "td-assert";
    case Rule::TdSub: return "td-sub";
    case Rule::TdConsStructIface: return "td-cons-struct-iface";
    case Rule::TdConsIfaceIface: return "td-cons-iface-iface";
    case Rule::TdDestrIfaceStruct: return "td-destr-iface-struct";
    case Rule::TdDestrIfaceIface: return "td-destr-iface-iface";
    case Rule::TdMethod: return "td-method";
    case Rule::TdProg: return "td-prog";
  }
  return "?";
}

RuleCounters& RuleCounters::operator+=(const RuleCounters& other) {
  for (std::size_t i = 0; i < kRuleCount; ++i) fired[i] += other.fired[i];
  return *this;
}

std::string Translator::fresh_var() { return "%" + std::to_string(++fresh_); }

namespace {

TranslationError err(TranslationError::Kind k, std::string where, std::string detail = "") {
  return {k, std::move(where), std::move(detail)};
}

bool subtype_of(const DeclTable& table, const TypeName& t, const TypeName& u) {
  auto r = table.subtype(t, u);
  return r.ok() && r.value();
}

}  // namespace

TransResult<TLExprPtr> Translator::coerce(const TypeName& from, const TypeName& to,
                                          const TLExprPtr& e) {
  if (from == to) return e;  // identity coercions are elided
  auto up = upcast(from, to);
  if (!up.ok()) return up.error();
  counters_.bump(Rule::TdSub);
  return tl::make_app(up.value(), e);
}

TransResult<TLExprPtr> Translator::upcast(const TypeName& t, const TypeName& iface) {
  if (!table_.is_declared(iface))
    return err(TranslationError::Kind::UndefinedType, iface, "undeclared type");
  if (!table_.is_interface(iface))
    return err(TranslationError::Kind::NotAnInterface, iface, "upcast target must be an interface");
  if (!table_.is_declared(t)) return err(TranslationError::Kind::UndefinedType, t, "undeclared type");

  auto wanted = table_.methods(iface);
  const auto& want = wanted.value();

  if (table_.is_struct(t)) {
    // lambda X. K_iface (X, m1$t, ..., mn$t)
    if (!subtype_of(table_, t, iface))
      return err(TranslationError::Kind::NotASubtype, t,
                 t + " does not implement " + iface);
    counters_.bump(Rule::TdConsStructIface);
    std::string x = fresh_var();
    std::vector<TLExprPtr> slots;
    slots.push_back(tl::make_var(x));
    for (const auto& spec : want) slots.push_back(tl::make_method_var(mangle_method(spec.name, t)));
    return tl::make_lam(x, tl::make_app(tl::make_con(mangle_con(iface)), tl::make_tuple(slots)));
  }

  // lambda X. case X of K_t (X0, X1..Xn) -> K_iface (X0, X_perm(1), ..., X_perm(q))
  auto given = table_.methods(t);
  const auto& have = given.value();
  std::vector<std::size_t> perm;
  for (const auto& spec : want) {
    auto it = std::find(have.begin(), have.end(), spec);
    if (it == have.end()) {
      std::string detail = t + " does not provide " + spec.name + " as specified by " + iface;
      auto near = std::find_if(have.begin(), have.end(), [&](const MethodSpec& s) {
        if (s.name != spec.name || s.sig.result != spec.sig.result) return false;
        if (s.sig.params.size() != spec.sig.params.size()) return false;
        for (std::size_t i = 0; i < s.sig.params.size(); ++i)
          if (s.sig.params[i].second != spec.sig.params[i].second) return false;
        return true;
      });
      if (near != have.end()) detail += " (specs differ only in parameter names)";
      return err(TranslationError::Kind::NotASubtype, t, detail);
    }
    perm.push_back(static_cast<std::size_t>(it - have.begin()));
  }
  counters_.bump(Rule::TdConsIfaceIface);
  std::string x = fresh_var();
  std::string payload_tuple = fresh_var();
  std::string val = fresh_var();
  std::vector<std::string> slot_vars;
  for (std::size_t i = 0; i < have.size(); ++i) slot_vars.push_back(fresh_var());

  std::vector<TLExprPtr> out_slots;
  out_slots.push_back(tl::make_var(val));
  for (std::size_t j : perm) out_slots.push_back(tl::make_var(slot_vars[j]));

  std::vector<std::string> pat_vars;
  pat_vars.push_back(val);
  pat_vars.insert(pat_vars.end(), slot_vars.begin(), slot_vars.end());

  TLExprPtr inner =
      tl::make_case(tl::make_var(payload_tuple),
                    {tl::Clause{tl::tuple_con(have.size() + 1), std::move(pat_vars),
                                tl::make_app(tl::make_con(mangle_con(iface)), tl::make_tuple(out_slots))}});
  TLExprPtr body = tl::make_case(tl::make_var(x),
                                 {tl::Clause{mangle_con(t), {payload_tuple}, std::move(inner)}});
  return tl::make_lam(x, std::move(body));
}

TransResult<TLExprPtr> Translator::downcast(const TypeName& iface, const TypeName& target) {
  if (!table_.is_declared(iface))
    return err(TranslationError::Kind::UndefinedType, iface, "undeclared type");
  if (!table_.is_interface(iface))
    return err(TranslationError::Kind::NotAnInterface, iface, "downcast source must be an interface");
  if (!table_.is_declared(target))
    return err(TranslationError::Kind::UndefinedType, target, "undeclared type");

  std::size_t n = table_.methods(iface).value().size();

  // Shared outer shape: lambda X. case X of K_iface (Y, X1..Xn) -> <inner on Y>.
  auto wrap = [&](const std::string& x, const std::string& payload, TLExprPtr inner_on_payload) {
    std::string tuple_var = fresh_var();
    std::vector<std::string> pat_vars;
    pat_vars.push_back(payload);
    for (std::size_t i = 0; i < n; ++i) pat_vars.push_back(fresh_var());
    TLExprPtr tuple_case =
        tl::make_case(tl::make_var(tuple_var),
                      {tl::Clause{tl::tuple_con(n + 1), std::move(pat_vars), std::move(inner_on_payload)}});
    return tl::make_lam(
        x, tl::make_case(tl::make_var(x), {tl::Clause{mangle_con(iface), {tuple_var}, std::move(tuple_case)}}));
  };

  if (table_.is_struct(target)) {
    if (!subtype_of(table_, target, iface))
      return err(TranslationError::Kind::NotASubtype, target,
                 target + " does not implement " + iface + "; the assertion could never succeed");
    counters_.bump(Rule::TdDestrIfaceStruct);
    std::string x = fresh_var();
    std::string payload = fresh_var();
    std::string fields = fresh_var();
    TLExprPtr rebuilt = tl::make_app(tl::make_con(mangle_con(target)), tl::make_var(fields));
    TLExprPtr inner = tl::make_case(tl::make_var(payload),
                                    {tl::Clause{mangle_con(target), {fields}, std::move(rebuilt)}});
    return wrap(x, payload, std::move(inner));
  }

  // Interface target: one clause per declared struct implementing it, in
  // declaration order. Structs that do not implement it get no clause, so
  // they panic at the inner case; the clause list may be empty.
  counters_.bump(Rule::TdDestrIfaceIface);
  std::string x = fresh_var();
  std::string payload = fresh_var();
  std::vector<tl::Clause> clauses;
  for (const auto& s : table_.struct_order()) {
    if (!subtype_of(table_, s, target)) continue;
    auto up = upcast(s, target);
    if (!up.ok()) return up.error();
    std::string fields = fresh_var();
    TLExprPtr rebuilt = tl::make_app(tl::make_con(mangle_con(s)), tl::make_var(fields));
    clauses.push_back(
        tl::Clause{mangle_con(s), {fields}, tl::make_app(up.value(), std::move(rebuilt))});
  }
  TLExprPtr inner = tl::make_case(tl::make_var(payload), std::move(clauses));
  return wrap(x, payload, std::move(inner));
}

TransResult<TypedExpr> Translator::expr(const TypeEnv& env, const fg::ExprPtr& e) {
  if (const auto* v = e->get_if<fg::VarExpr>()) {
    for (const auto& [name, type] : env) {
      if (name == v->name) {
        counters_.bump(Rule::TdVar);
        return TypedExpr{type, tl::make_var(v->name)};
      }
    }
    return err(TranslationError::Kind::UnknownVar, v->name, "variable not in scope");
  }

  if (const auto* s = e->get_if<fg::StructLitExpr>()) {
    const fg::TypeDecl* td = table_.type_decl(s->type_name);
    if (td == nullptr)
      return err(TranslationError::Kind::UndefinedType, s->type_name, "undeclared type");
    if (!td->is_struct())
      return err(TranslationError::Kind::NotAStruct, s->type_name,
                 "struct literal of interface type");
    const auto& fields = td->as_struct().fields;
    if (fields.size() != s->args.size())
      return err(TranslationError::Kind::NoSuchField, s->type_name,
                 "literal has " + std::to_string(s->args.size()) + " arguments for " +
                     std::to_string(fields.size()) + " fields");
    std::vector<TLExprPtr> parts;
    parts.reserve(s->args.size());
    for (std::size_t i = 0; i < s->args.size(); ++i) {
      auto sub = expr(env, s->args[i]);
      if (!sub.ok()) return sub.error();
      auto coerced = coerce(sub.value().type, fields[i].second, sub.value().expr);
      if (!coerced.ok()) return coerced.error();
      parts.push_back(coerced.value());
    }
    counters_.bump(Rule::TdStruct);
    return TypedExpr{s->type_name,
                     tl::make_app(tl::make_con(mangle_con(s->type_name)), tl::make_tuple(parts))};
  }

  if (const auto* sel = e->get_if<fg::SelectExpr>()) {
    auto recv = expr(env, sel->receiver);
    if (!recv.ok()) return recv.error();
    const TypeName& rt = recv.value().type;
    if (!table_.is_struct(rt))
      return err(TranslationError::Kind::NotAStruct, rt,
                 "field selection needs a struct receiver, got " + rt);
    const auto& fields = table_.type_decl(rt)->as_struct().fields;
    auto it = std::find_if(fields.begin(), fields.end(),
                           [&](const auto& f) { return f.first == sel->field; });
    if (it == fields.end())
      return err(TranslationError::Kind::NoSuchField, rt, "no field " + sel->field);
    std::size_t index = static_cast<std::size_t>(it - fields.begin());

    counters_.bump(Rule::TdAccess);
    std::string tuple_var = fresh_var();
    std::vector<std::string> vars;
    for (std::size_t i = 0; i < fields.size(); ++i) vars.push_back(fresh_var());
    TLExprPtr pick = tl::make_var(vars[index]);
    TLExprPtr inner = tl::make_case(tl::make_var(tuple_var),
                                    {tl::Clause{tl::tuple_con(fields.size()), std::move(vars), pick}});
    TLExprPtr out = tl::make_case(recv.value().expr,
                                  {tl::Clause{mangle_con(rt), {tuple_var}, std::move(inner)}});
    return TypedExpr{it->second, std::move(out)};
  }

  if (const auto* call = e->get_if<fg::CallExpr>()) {
    auto recv = expr(env, call->receiver);
    if (!recv.ok()) return recv.error();
    const TypeName& rt = recv.value().type;

    const fg::MethodSignature* sig = nullptr;
    std::size_t dict_index = 0;
    std::size_t dict_size = 0;
    bool iface_dispatch = table_.is_interface(rt);
    if (iface_dispatch) {
      auto specs = table_.methods(rt);
      const auto& list = specs.value();
      auto it = std::find_if(list.begin(), list.end(),
                             [&](const MethodSpec& sp) { return sp.name == call->method; });
      if (it == list.end())
        return err(TranslationError::Kind::NoSuchMethod, rt,
                   rt + " has no method " + call->method);
      sig = &it->sig;
      dict_index = static_cast<std::size_t>(it - list.begin());
      dict_size = list.size();
    } else {
      auto decl = table_.method_lookup(call->method, rt);
      if (!decl.ok())
        return err(TranslationError::Kind::NoSuchMethod, rt,
                   "no declaration of " + call->method + " for receiver " + rt);
      sig = &decl.value()->sig;
    }
    if (sig->params.size() != call->args.size())
      return err(TranslationError::Kind::NoSuchMethod, call->method,
                 "call has " + std::to_string(call->args.size()) + " arguments for " +
                     std::to_string(sig->params.size()) + " parameters");

    std::vector<TLExprPtr> arg_parts;
    arg_parts.reserve(call->args.size());
    for (std::size_t i = 0; i < call->args.size(); ++i) {
      auto sub = expr(env, call->args[i]);
      if (!sub.ok()) return sub.error();
      auto coerced = coerce(sub.value().type, sig->params[i].second, sub.value().expr);
      if (!coerced.ok()) return coerced.error();
      arg_parts.push_back(coerced.value());
    }

    if (!iface_dispatch) {
      counters_.bump(Rule::TdCallStruct);
      TLExprPtr out = tl::make_app(
          tl::make_app(tl::make_method_var(mangle_method(call->method, rt)), recv.value().expr),
          tl::make_tuple(arg_parts));
      return TypedExpr{sig->result, std::move(out)};
    }

    counters_.bump(Rule::TdCallIface);
    std::string tuple_var = fresh_var();
    std::string payload = fresh_var();
    std::vector<std::string> slots;
    for (std::size_t i = 0; i < dict_size; ++i) slots.push_back(fresh_var());
    TLExprPtr invoke = tl::make_app(
        tl::make_app(tl::make_var(slots[dict_index]), tl::make_var(payload)),
        tl::make_tuple(arg_parts));
    std::vector<std::string> pat_vars;
    pat_vars.push_back(payload);
    pat_vars.insert(pat_vars.end(), slots.begin(), slots.end());
    TLExprPtr inner = tl::make_case(
        tl::make_var(tuple_var),
        {tl::Clause{tl::tuple_con(dict_size + 1), std::move(pat_vars), std::move(invoke)}});
    TLExprPtr out = tl::make_case(recv.value().expr,
                                  {tl::Clause{mangle_con(rt), {tuple_var}, std::move(inner)}});
    return TypedExpr{sig->result, std::move(out)};
  }

  if (const auto* as = e->get_if<fg::AssertExpr>()) {
    auto recv = expr(env, as->receiver);
    if (!recv.ok()) return recv.error();
    const TypeName& rt = recv.value().type;
    if (table_.is_struct(rt))
      return err(TranslationError::Kind::AssertOnStruct, rt,
                 "type assertion on an expression of struct type " + rt);
    auto down = downcast(rt, as->type_name);
    if (!down.ok()) return down.error();
    counters_.bump(Rule::TdAssert);
    return TypedExpr{as->type_name, tl::make_app(down.value(), recv.value().expr)};
  }

  return err(TranslationError::Kind::UnknownVar, "<hole>", "hole expression is not translatable");
}

TransResult<std::pair<std::string, TLExprPtr>> Translator::method(const fg::MethodDecl& decl) {
  TypeEnv env;
  env.emplace_back(decl.receiver_var, decl.receiver_type);
  for (const auto& p : decl.sig.params) env.emplace_back(p.first, p.second);

  auto body = expr(env, decl.body);
  if (!body.ok()) return body.error();
  auto coerced = coerce(body.value().type, decl.sig.result, body.value().expr);
  if (!coerced.ok()) return coerced.error();

  counters_.bump(Rule::TdMethod);
  // lambda X. lambda (X1,...,Xn). E, with the tuple binder desugared.
  std::vector<std::string> params;
  for (const auto& p : decl.sig.params) params.push_back(p.first);
  std::string args_var = fresh_var();
  TLExprPtr args_case =
      tl::make_case(tl::make_var(args_var),
                    {tl::Clause{tl::tuple_con(params.size()), std::move(params), coerced.value()}});
  TLExprPtr lam = tl::make_lam(decl.receiver_var, tl::make_lam(args_var, std::move(args_case)));
  return std::make_pair(mangle_method(decl.name, decl.receiver_type), std::move(lam));
}

TransResult<TranslateResult> Translator::program() {
  counters_ = RuleCounters{};
  fresh_ = 0;

  TranslateResult out;
  counters_.bump(Rule::TdProg);
  for (const fg::MethodDecl* md : table_.method_order()) {
    auto binding = method(*md);
    if (!binding.ok()) return binding.error();
    out.program.bindings.add(binding.value().first, binding.value().second);
  }
  auto main = expr({}, table_.program().main);
  if (!main.ok()) return main.error();
  out.program.main = main.value().expr;
  out.main_type = main.value().type;
  out.counters = counters_;
  return out;
}

TransResult<TypedExpr> translate_expr(const DeclTable& table, const TypeEnv& env,
                                      const fg::ExprPtr& e) {
  Translator t(table);
  return t.expr(env, e);
}

TransResult<TLExprPtr> coerce(const DeclTable& table, const TypeName& from, const TypeName& to,
                              const TLExprPtr& e) {
  Translator t(table);
  return t.coerce(from, to, e);
}

TransResult<TLExprPtr> build_upcast(const DeclTable& table, const TypeName& t,
                                    const TypeName& iface) {
  Translator tr(table);
  return tr.upcast(t, iface);
}

TransResult<TLExprPtr> build_downcast(const DeclTable& table, const TypeName& iface,
                                      const TypeName& target) {
  Translator tr(table);
  return tr.downcast(iface, target);
}

TransResult<std::pair<std::string, TLExprPtr>> translate_method(const DeclTable& table,
                                                                const fg::MethodDecl& decl) {
  Translator t(table);
  return t.method(decl);
}

TransResult<TranslateResult> translate_program(const DeclTable& table) {
  Translator t(table);
  return t.program();
}

std::string TranslateFailure::to_string() const {
  std::ostringstream os;
  for (const auto& v : violations) os << v.to_string() << '\n';
  if (error) os << error->to_string() << '\n';
  return os.str();
}

Expected<TranslateResult, TranslateFailure> translate_checked(const fg::Program& p) {
  auto table = fg::DeclTable::build(p);
  if (!table.ok()) return TranslateFailure{table.error(), std::nullopt};
  auto violations = fg::check_conditions(table.value());
  if (!violations.empty()) return TranslateFailure{std::move(violations), std::nullopt};
  auto result = translate_program(table.value());
  if (!result.ok()) return TranslateFailure{{}, result.error()};
  return std::move(result).value();
}

}  // namespace fgdict::trans
