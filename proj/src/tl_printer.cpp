#include "fgdict/tl_printer.hpp"

#include <algorithm>
#include <optional>
#include <sstream>

namespace fgdict::tl {

namespace {

// Precedence: 0 top-level (lambda/case bare), 1 application function
// position, 2 application argument position.
void print_rec(const TLExpr& e, int prec, std::ostream& os);

// Complete tuple application spine, if this expression is one.
std::optional<std::vector<const TLExpr*>> tuple_spine(const TLExpr& e) {
  std::vector<const TLExpr*> args;
  const TLExpr* cur = &e;
  while (const auto* app = cur->get_if<AppE>()) {
    args.push_back(app->arg.get());
    cur = app->fn.get();
  }
  const auto* k = cur->get_if<ConE>();
  if (k == nullptr) return std::nullopt;
  auto n = tuple_arity(k->name);
  if (!n || *n != args.size()) return std::nullopt;
  std::reverse(args.begin(), args.end());
  return args;
}

void print_tuple(const std::vector<const TLExpr*>& items, std::ostream& os) {
  os << '(';
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i > 0) os << ", ";
    print_rec(*items[i], 0, os);
  }
  if (items.size() == 1) os << ',';
  os << ')';
}

void print_clause(const Clause& cls, std::ostream& os) {
  auto n = tuple_arity(cls.con);
  if (n && *n == cls.vars.size()) {
    os << '(';
    for (std::size_t i = 0; i < cls.vars.size(); ++i) {
      if (i > 0) os << ", ";
      os << cls.vars[i];
    }
    if (cls.vars.size() == 1) os << ',';
    os << ')';
  } else {
    os << cls.con;
    for (const auto& v : cls.vars) os << ' ' << v;
  }
  os << " -> ";
  print_rec(*cls.body, 0, os);
}

void print_rec(const TLExpr& e, int prec, std::ostream& os) {
  if (const auto* v = e.get_if<VarE>()) {
    os << v->name;
    return;
  }
  if (const auto* m = e.get_if<MethodVarE>()) {
    os << m->name;
    return;
  }
  if (const auto* k = e.get_if<ConE>()) {
    os << k->name;
    return;
  }
  if (e.get_if<HoleE>()) {
    os << "\xe2\x96\xa1";
    return;
  }
  if (const auto* lam = e.get_if<LamE>()) {
    if (prec > 0) os << '(';
    os << '\\' << lam->param << ". ";
    print_rec(*lam->body, 0, os);
    if (prec > 0) os << ')';
    return;
  }
  if (const auto* c = e.get_if<CaseE>()) {
    if (prec > 0) os << '(';
    os << "case ";
    print_rec(*c->scrutinee, 1, os);
    os << " of { ";
    for (std::size_t i = 0; i < c->clauses.size(); ++i) {
      if (i > 0) os << "; ";
      print_clause(c->clauses[i], os);
    }
    os << " }";
    if (prec > 0) os << ')';
    return;
  }
  // Application. Complete tuple spines print in tuple notation.
  if (auto items = tuple_spine(e)) {
    print_tuple(*items, os);
    return;
  }
  const auto* app = e.get_if<AppE>();
  if (prec > 1) os << '(';
  print_rec(*app->fn, 1, os);
  os << ' ';
  print_rec(*app->arg, 2, os);
  if (prec > 1) os << ')';
}

}  // namespace

std::string print_expr(const TLExpr& e) {
  std::ostringstream os;
  print_rec(e, 0, os);
  return os.str();
}

std::string print_value(const TLValue& v) { return print_expr(*value_to_expr(v)); }

std::string print_program(const TLProgram& p) {
  std::ostringstream os;
  if (p.bindings.size() > 0) {
    os << "let\n";
    const auto& bs = p.bindings.ordered();
    for (std::size_t i = 0; i < bs.size(); ++i) {
      os << "  " << bs[i].first << " = " << print_expr(*bs[i].second);
      os << (i + 1 < bs.size() ? ";\n" : "\n");
    }
    os << "in\n";
  }
  os << print_expr(*p.main) << '\n';
  return os.str();
}

}  // namespace fgdict::tl
