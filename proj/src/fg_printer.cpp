#include "fgdict/fg_printer.hpp"

#include <sstream>

namespace fgdict::fg {

namespace {

void print_expr_to(const Expr& e, std::ostream& os) {
  if (const auto* v = e.get_if<VarExpr>()) {
    os << v->name;
    return;
  }
  if (const auto* c = e.get_if<CallExpr>()) {
    print_expr_to(*c->receiver, os);
    os << '.' << c->method << '(';
    for (std::size_t i = 0; i < c->args.size(); ++i) {
      if (i > 0) os << ", ";
      print_expr_to(*c->args[i], os);
    }
    os << ')';
    return;
  }
  if (const auto* s = e.get_if<StructLitExpr>()) {
    os << s->type_name << '{';
    for (std::size_t i = 0; i < s->args.size(); ++i) {
      if (i > 0) os << ", ";
      print_expr_to(*s->args[i], os);
    }
    os << '}';
    return;
  }
  if (const auto* f = e.get_if<SelectExpr>()) {
    print_expr_to(*f->receiver, os);
    os << '.' << f->field;
    return;
  }
  if (const auto* t = e.get_if<AssertExpr>()) {
    print_expr_to(*t->receiver, os);
    os << ".(" << t->type_name << ')';
    return;
  }
  os << "\xe2\x96\xa1";  // hole
}

void print_sig_to(const MethodSignature& sig, std::ostream& os) {
  os << '(';
  for (std::size_t i = 0; i < sig.params.size(); ++i) {
    if (i > 0) os << ", ";
    os << sig.params[i].first << ' ' << sig.params[i].second;
  }
  os << ") " << sig.result;
}

}  // namespace

std::string print_expr(const Expr& e) {
  std::ostringstream os;
  print_expr_to(e, os);
  return os.str();
}

std::string print_value(const FGValue& v) {
  std::ostringstream os;
  os << v.type_name << '{';
  for (std::size_t i = 0; i < v.args.size(); ++i) {
    if (i > 0) os << ", ";
    os << print_value(v.args[i]);
  }
  os << '}';
  return os.str();
}

std::string print_program(const Program& p) {
  std::ostringstream os;
  for (const auto& d : p.decls) {
    if (const auto* td = std::get_if<TypeDecl>(&d)) {
      os << "type " << td->name << ' ';
      if (td->is_struct()) {
        os << "struct {";
        const auto& fields = td->as_struct().fields;
        if (fields.empty()) {
          os << " }\n";
        } else {
          os << '\n';
          for (const auto& [fname, ftype] : fields) os << "    " << fname << ' ' << ftype << '\n';
          os << "}\n";
        }
      } else {
        os << "interface {";
        const auto& specs = td->as_interface().specs;
        if (specs.empty()) {
          os << " }\n";
        } else {
          os << '\n';
          for (const auto& s : specs) {
            os << "    " << s.name;
            print_sig_to(s.sig, os);
            os << '\n';
          }
          os << "}\n";
        }
      }
    } else {
      const auto& md = std::get<MethodDecl>(d);
      os << "func (" << md.receiver_var << ' ' << md.receiver_type << ") " << md.name;
      print_sig_to(md.sig, os);
      os << " {\n    return " << print_expr(*md.body) << "\n}\n";
    }
  }
  os << "func main() {\n    _ = " << print_expr(*p.main) << "\n}\n";
  return os.str();
}

}  // namespace fgdict::fg
