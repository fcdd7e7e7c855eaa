#include "fgdict/fg_ast.hpp"

#include <algorithm>
#include <stdexcept>

namespace fgdict::fg {

ExprPtr make_var(std::string name) {
  return std::make_shared<Expr>(Expr{VarExpr{std::move(name)}});
}

ExprPtr make_call(ExprPtr receiver, std::string method, std::vector<ExprPtr> args) {
  return std::make_shared<Expr>(Expr{CallExpr{std::move(receiver), std::move(method), std::move(args)}});
}

ExprPtr make_struct_lit(TypeName type_name, std::vector<ExprPtr> args) {
  return std::make_shared<Expr>(Expr{StructLitExpr{std::move(type_name), std::move(args)}});
}

ExprPtr make_select(ExprPtr receiver, std::string field) {
  return std::make_shared<Expr>(Expr{SelectExpr{std::move(receiver), std::move(field)}});
}

ExprPtr make_assert(ExprPtr receiver, TypeName type_name) {
  return std::make_shared<Expr>(Expr{AssertExpr{std::move(receiver), std::move(type_name)}});
}

ExprPtr make_hole() { return std::make_shared<Expr>(Expr{HoleExpr{}}); }

bool equal(const Expr& a, const Expr& b) {
  if (a.node.index() != b.node.index()) return false;
  if (const auto* va = a.get_if<VarExpr>()) {
    return va->name == b.get_if<VarExpr>()->name;
  }
  if (const auto* ca = a.get_if<CallExpr>()) {
    const auto* cb = b.get_if<CallExpr>();
    if (ca->method != cb->method || ca->args.size() != cb->args.size()) return false;
    if (!equal(*ca->receiver, *cb->receiver)) return false;
    for (std::size_t i = 0; i < ca->args.size(); ++i)
      if (!equal(*ca->args[i], *cb->args[i])) return false;
    return true;
  }
  if (const auto* sa = a.get_if<StructLitExpr>()) {
    const auto* sb = b.get_if<StructLitExpr>();
    if (sa->type_name != sb->type_name || sa->args.size() != sb->args.size()) return false;
    for (std::size_t i = 0; i < sa->args.size(); ++i)
      if (!equal(*sa->args[i], *sb->args[i])) return false;
    return true;
  }
  if (const auto* fa = a.get_if<SelectExpr>()) {
    const auto* fb = b.get_if<SelectExpr>();
    return fa->field == fb->field && equal(*fa->receiver, *fb->receiver);
  }
  if (const auto* ta = a.get_if<AssertExpr>()) {
    const auto* tb = b.get_if<AssertExpr>();
    return ta->type_name == tb->type_name && equal(*ta->receiver, *tb->receiver);
  }
  return true;  // HoleExpr
}

static bool decl_equal(const Decl& a, const Decl& b) {
  if (a.index() != b.index()) return false;
  if (const auto* ta = std::get_if<TypeDecl>(&a)) {
    const auto* tb = std::get_if<TypeDecl>(&b);
    if (ta->name != tb->name || ta->literal.index() != tb->literal.index()) return false;
    if (ta->is_struct()) return ta->as_struct().fields == tb->as_struct().fields;
    return ta->as_interface().specs == tb->as_interface().specs;
  }
  const auto* ma = std::get_if<MethodDecl>(&a);
  const auto* mb = std::get_if<MethodDecl>(&b);
  return ma->receiver_var == mb->receiver_var && ma->receiver_type == mb->receiver_type &&
         ma->name == mb->name && ma->sig == mb->sig && equal(*ma->body, *mb->body);
}

bool equal(const Program& a, const Program& b) {
  if (a.decls.size() != b.decls.size()) return false;
  for (std::size_t i = 0; i < a.decls.size(); ++i)
    if (!decl_equal(a.decls[i], b.decls[i])) return false;
  return equal(*a.main, *b.main);
}

bool is_value(const Expr& e) {
  const auto* lit = e.get_if<StructLitExpr>();
  if (lit == nullptr) return false;
  return std::all_of(lit->args.begin(), lit->args.end(),
                     [](const ExprPtr& a) { return is_value(*a); });
}

FGValue to_value(const Expr& e) {
  const auto* lit = e.get_if<StructLitExpr>();
  if (lit == nullptr) throw std::logic_error("to_value: expression is not a value");
  FGValue v;
  v.type_name = lit->type_name;
  v.args.reserve(lit->args.size());
  for (const auto& a : lit->args) v.args.push_back(to_value(*a));
  return v;
}

ExprPtr value_to_expr(const FGValue& v) {
  std::vector<ExprPtr> args;
  args.reserve(v.args.size());
  for (const auto& a : v.args) args.push_back(value_to_expr(a));
  return make_struct_lit(v.type_name, std::move(args));
}

ExprPtr substitute(const ExprPtr& e, const std::vector<std::pair<std::string, ExprPtr>>& binds) {
  if (const auto* v = e->get_if<VarExpr>()) {
    for (const auto& [name, repl] : binds)
      if (name == v->name) return repl;
    return e;
  }
  if (const auto* c = e->get_if<CallExpr>()) {
    std::vector<ExprPtr> args;
    args.reserve(c->args.size());
    for (const auto& a : c->args) args.push_back(substitute(a, binds));
    return make_call(substitute(c->receiver, binds), c->method, std::move(args));
  }
  if (const auto* s = e->get_if<StructLitExpr>()) {
    std::vector<ExprPtr> args;
    args.reserve(s->args.size());
    for (const auto& a : s->args) args.push_back(substitute(a, binds));
    return make_struct_lit(s->type_name, std::move(args));
  }
  if (const auto* f = e->get_if<SelectExpr>()) {
    return make_select(substitute(f->receiver, binds), f->field);
  }
  if (const auto* t = e->get_if<AssertExpr>()) {
    return make_assert(substitute(t->receiver, binds), t->type_name);
  }
  return e;  // HoleExpr
}

static void collect_free_vars(const Expr& e, std::vector<std::string>& out) {
  if (const auto* v = e.get_if<VarExpr>()) {
    if (std::find(out.begin(), out.end(), v->name) == out.end()) out.push_back(v->name);
    return;
  }
  if (const auto* c = e.get_if<CallExpr>()) {
    collect_free_vars(*c->receiver, out);
    for (const auto& a : c->args) collect_free_vars(*a, out);
    return;
  }
  if (const auto* s = e.get_if<StructLitExpr>()) {
    for (const auto& a : s->args) collect_free_vars(*a, out);
    return;
  }
  if (const auto* f = e.get_if<SelectExpr>()) {
    collect_free_vars(*f->receiver, out);
    return;
  }
  if (const auto* t = e.get_if<AssertExpr>()) {
    collect_free_vars(*t->receiver, out);
    return;
  }
}

std::vector<std::string> free_vars(const Expr& e) {
  std::vector<std::string> out;
  collect_free_vars(e, out);
  return out;
}

std::size_t node_count(const Expr& e) {
  std::size_t n = 1;
  if (const auto* c = e.get_if<CallExpr>()) {
    n += node_count(*c->receiver);
    for (const auto& a : c->args) n += node_count(*a);
  } else if (const auto* s = e.get_if<StructLitExpr>()) {
    for (const auto& a : s->args) n += node_count(*a);
  } else if (const auto* f = e.get_if<SelectExpr>()) {
    n += node_count(*f->receiver);
  } else if (const auto* t = e.get_if<AssertExpr>()) {
    n += node_count(*t->receiver);
  }
  return n;
}

}  // namespace fgdict::fg
