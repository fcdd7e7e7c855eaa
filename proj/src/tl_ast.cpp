#include "fgdict/tl_ast.hpp"

#include <stdexcept>

namespace fgdict::tl {

TLExprPtr make_var(std::string name) { return std::make_shared<TLExpr>(TLExpr{VarE{std::move(name)}}); }
TLExprPtr make_method_var(std::string name) {
  return std::make_shared<TLExpr>(TLExpr{MethodVarE{std::move(name)}});
}
TLExprPtr make_con(std::string name) { return std::make_shared<TLExpr>(TLExpr{ConE{std::move(name)}}); }
TLExprPtr make_app(TLExprPtr fn, TLExprPtr arg) {
  return std::make_shared<TLExpr>(TLExpr{AppE{std::move(fn), std::move(arg)}});
}
TLExprPtr make_lam(std::string param, TLExprPtr body) {
  return std::make_shared<TLExpr>(TLExpr{LamE{std::move(param), std::move(body)}});
}
TLExprPtr make_case(TLExprPtr scrutinee, std::vector<Clause> clauses) {
  return std::make_shared<TLExpr>(TLExpr{CaseE{std::move(scrutinee), std::move(clauses)}});
}
TLExprPtr make_hole() { return std::make_shared<TLExpr>(TLExpr{HoleE{}}); }

TLExprPtr apply_all(TLExprPtr fn, const std::vector<TLExprPtr>& args) {
  TLExprPtr e = std::move(fn);
  for (const auto& a : args) e = make_app(e, a);
  return e;
}

std::string tuple_con(std::size_t arity) { return "Tuple" + std::to_string(arity); }

std::optional<std::size_t> tuple_arity(const std::string& con) {
  if (con.rfind("Tuple", 0) != 0) return std::nullopt;
  std::string digits = con.substr(5);
  if (digits.empty()) return std::nullopt;
  for (char c : digits)
    if (c < '0' || c > '9') return std::nullopt;
  return static_cast<std::size_t>(std::stoull(digits));
}

TLExprPtr make_tuple(const std::vector<TLExprPtr>& items) {
  return apply_all(make_con(tuple_con(items.size())), items);
}

bool equal(const TLExpr& a, const TLExpr& b) {
  if (a.node.index() != b.node.index()) return false;
  if (const auto* v = a.get_if<VarE>()) return v->name == b.get_if<VarE>()->name;
  if (const auto* m = a.get_if<MethodVarE>()) return m->name == b.get_if<MethodVarE>()->name;
  if (const auto* k = a.get_if<ConE>()) return k->name == b.get_if<ConE>()->name;
  if (const auto* ap = a.get_if<AppE>()) {
    const auto* bp = b.get_if<AppE>();
    return equal(*ap->fn, *bp->fn) && equal(*ap->arg, *bp->arg);
  }
  if (const auto* la = a.get_if<LamE>()) {
    const auto* lb = b.get_if<LamE>();
    return la->param == lb->param && equal(*la->body, *lb->body);
  }
  if (const auto* ca = a.get_if<CaseE>()) {
    const auto* cb = b.get_if<CaseE>();
    if (ca->clauses.size() != cb->clauses.size()) return false;
    if (!equal(*ca->scrutinee, *cb->scrutinee)) return false;
    for (std::size_t i = 0; i < ca->clauses.size(); ++i) {
      const Clause& x = ca->clauses[i];
      const Clause& y = cb->clauses[i];
      if (x.con != y.con || x.vars != y.vars || !equal(*x.body, *y.body)) return false;
    }
    return true;
  }
  return true;  // HoleE
}

bool equal(const TLValue& a, const TLValue& b) {
  if (a.v.index() != b.v.index()) return false;
  if (const auto* ca = a.get_if<ConVal>()) {
    const auto* cb = b.get_if<ConVal>();
    if (ca->con != cb->con || ca->args.size() != cb->args.size()) return false;
    for (std::size_t i = 0; i < ca->args.size(); ++i)
      if (!equal(ca->args[i], cb->args[i])) return false;
    return true;
  }
  if (const auto* la = a.get_if<LamVal>()) {
    const auto* lb = b.get_if<LamVal>();
    return la->param == lb->param && equal(*la->body, *lb->body);
  }
  return a.get_if<MethodNameVal>()->name == b.get_if<MethodNameVal>()->name;
}

namespace {

// Walks an application spine; true iff the head is a constructor and all
// arguments along the spine are values.
bool is_con_spine_value(const TLExpr& e) {
  if (e.get_if<ConE>()) return true;
  if (const auto* app = e.get_if<AppE>())
    return is_con_spine_value(*app->fn) && is_value(*app->arg);
  return false;
}

}  // namespace

bool is_value(const TLExpr& e) {
  if (e.get_if<LamE>() || e.get_if<MethodVarE>() || e.get_if<ConE>()) return true;
  if (e.get_if<AppE>()) return is_con_spine_value(e);
  return false;
}

std::optional<TLValue> to_value(const TLExpr& e) {
  if (const auto* l = e.get_if<LamE>()) return TLValue{LamVal{l->param, l->body}};
  if (const auto* m = e.get_if<MethodVarE>()) return TLValue{MethodNameVal{m->name}};
  if (const auto* k = e.get_if<ConE>()) return TLValue{ConVal{k->name, {}}};
  if (const auto* app = e.get_if<AppE>()) {
    auto fn = to_value(*app->fn);
    if (!fn) return std::nullopt;
    auto* con = fn->get_if<ConVal>();
    if (con == nullptr) return std::nullopt;
    auto arg = to_value(*app->arg);
    if (!arg) return std::nullopt;
    ConVal out = *con;
    out.args.push_back(std::move(*arg));
    return TLValue{std::move(out)};
  }
  return std::nullopt;
}

TLExprPtr value_to_expr(const TLValue& v) {
  if (const auto* c = v.get_if<ConVal>()) {
    TLExprPtr e = make_con(c->con);
    for (const auto& a : c->args) e = make_app(e, value_to_expr(a));
    return e;
  }
  if (const auto* l = v.get_if<LamVal>()) return make_lam(l->param, l->body);
  return make_method_var(v.get_if<MethodNameVal>()->name);
}

void MethodBindings::add(std::string name, TLExprPtr lambda) {
  if (index_.count(name) != 0) throw std::logic_error("duplicate method binding: " + name);
  index_.emplace(name, ordered_.size());
  ordered_.emplace_back(std::move(name), std::move(lambda));
}

const TLExprPtr* MethodBindings::find(const std::string& name) const {
  auto it = index_.find(name);
  if (it == index_.end()) return nullptr;
  return &ordered_[it->second].second;
}

namespace {

void free_vars_rec(const TLExpr& e, std::set<std::string>& bound, FreeVars& out) {
  if (const auto* v = e.get_if<VarE>()) {
    if (bound.count(v->name) == 0) out.term.insert(v->name);
    return;
  }
  if (const auto* m = e.get_if<MethodVarE>()) {
    out.method.insert(m->name);
    return;
  }
  if (const auto* app = e.get_if<AppE>()) {
    free_vars_rec(*app->fn, bound, out);
    free_vars_rec(*app->arg, bound, out);
    return;
  }
  if (const auto* lam = e.get_if<LamE>()) {
    bool inserted = bound.insert(lam->param).second;
    free_vars_rec(*lam->body, bound, out);
    if (inserted) bound.erase(lam->param);
    return;
  }
  if (const auto* c = e.get_if<CaseE>()) {
    free_vars_rec(*c->scrutinee, bound, out);
    for (const auto& cls : c->clauses) {
      std::vector<std::string> inserted;
      for (const auto& v : cls.vars)
        if (bound.insert(v).second) inserted.push_back(v);
      free_vars_rec(*cls.body, bound, out);
      for (const auto& v : inserted) bound.erase(v);
    }
    return;
  }
}

}  // namespace

FreeVars tl_free_vars(const TLExpr& e) {
  FreeVars out;
  std::set<std::string> bound;
  free_vars_rec(e, bound, out);
  return out;
}

std::size_t node_count(const TLExpr& e) {
  std::size_t n = 1;
  if (const auto* app = e.get_if<AppE>()) {
    n += node_count(*app->fn) + node_count(*app->arg);
  } else if (const auto* lam = e.get_if<LamE>()) {
    n += node_count(*lam->body);
  } else if (const auto* c = e.get_if<CaseE>()) {
    n += node_count(*c->scrutinee);
    for (const auto& cls : c->clauses) n += node_count(*cls.body);
  }
  return n;
}

}  // namespace fgdict::tl
