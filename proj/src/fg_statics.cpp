#include "fgdict/fg_statics.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <sstream>

namespace fgdict::fg {

const char* wf_kind_name(WfViolation::Kind k) {
  switch (k) {
    case WfViolation::Kind::RecursiveStruct: return "RecursiveStruct";
    case WfViolation::Kind::DupField: return "DupField";
    case WfViolation::Kind::DupMethodSpec: return "DupMethodSpec";
    case WfViolation::Kind::DupReceiverMethod: return "DupReceiverMethod";
    case WfViolation::Kind::UndefinedType: return "UndefinedType";
    case WfViolation::Kind::DupTypeDecl: return "DupTypeDecl";
    case WfViolation::Kind::ReceiverNotStruct: return "ReceiverNotStruct";
    case WfViolation::Kind::NameSetOverlap: return "NameSetOverlap";
  }
  return "?";
}

std::string WfViolation::to_string() const {
  std::ostringstream os;
  os << wf_kind_name(kind) << " at " << where;
  if (!detail.empty()) os << ": " << detail;
  return os.str();
}

Expected<DeclTable, std::vector<WfViolation>> DeclTable::build(Program program) {
  DeclTable t;
  t.program_ = std::make_shared<const Program>(std::move(program));
  std::vector<WfViolation> violations;

  for (const auto& d : t.program_->decls) {
    if (const auto* td = std::get_if<TypeDecl>(&d)) {
      auto [it, inserted] = t.by_name_.emplace(td->name, td);
      if (!inserted) {
        violations.push_back({WfViolation::Kind::DupTypeDecl, td->name,
                              "type declared more than once"});
        continue;
      }
      if (td->is_struct()) t.struct_order_.push_back(td->name);
    } else {
      const auto& md = std::get<MethodDecl>(d);
      auto key = std::make_pair(md.name, md.receiver_type);
      auto [it, inserted] = t.methods_by_receiver_.emplace(key, &md);
      if (!inserted) {
        violations.push_back({WfViolation::Kind::DupReceiverMethod,
                              md.name + "/" + md.receiver_type,
                              "method redeclared for the same receiver"});
        continue;
      }
      t.method_order_.push_back(&md);
    }
  }
  if (!violations.empty()) return violations;

  // Spec sets, in declaration order.
  for (const auto& [name, td] : t.by_name_) {
    std::vector<MethodSpec> specs;
    if (td->is_struct()) {
      for (const MethodDecl* md : t.method_order_)
        if (md->receiver_type == name) specs.push_back({md->name, md->sig});
    } else {
      specs = td->as_interface().specs;
    }
    t.spec_sets_.emplace(name, std::move(specs));
  }
  return t;
}

bool DeclTable::is_struct(const TypeName& t) const {
  auto it = by_name_.find(t);
  return it != by_name_.end() && it->second->is_struct();
}

bool DeclTable::is_interface(const TypeName& t) const {
  auto it = by_name_.find(t);
  return it != by_name_.end() && !it->second->is_struct();
}

const TypeDecl* DeclTable::type_decl(const TypeName& t) const {
  auto it = by_name_.find(t);
  return it == by_name_.end() ? nullptr : it->second;
}

Expected<std::vector<MethodSpec>, WfViolation> DeclTable::methods(const TypeName& t) const {
  auto it = spec_sets_.find(t);
  if (it == spec_sets_.end())
    return WfViolation{WfViolation::Kind::UndefinedType, t, "type not declared"};
  return it->second;
}

Expected<bool, WfViolation> DeclTable::subtype(const TypeName& t, const TypeName& u) const {
  const TypeDecl* dt = type_decl(t);
  const TypeDecl* du = type_decl(u);
  if (dt == nullptr) return WfViolation{WfViolation::Kind::UndefinedType, t, "type not declared"};
  if (du == nullptr) return WfViolation{WfViolation::Kind::UndefinedType, u, "type not declared"};
  if (du->is_struct()) return t == u && dt->is_struct();
  const auto& have = spec_sets_.at(t);
  const auto& want = spec_sets_.at(u);
  for (const auto& spec : want) {
    if (std::find(have.begin(), have.end(), spec) == have.end()) return false;
  }
  return true;
}

Expected<const MethodDecl*, WfViolation> DeclTable::method_lookup(const std::string& method,
                                                                  const TypeName& receiver) const {
  auto it = methods_by_receiver_.find({method, receiver});
  if (it == methods_by_receiver_.end())
    return WfViolation{WfViolation::Kind::UndefinedType, method + "/" + receiver,
                       "no method declaration for (" + method + ", " + receiver + ")"};
  return it->second;
}

namespace {

void require_declared(const DeclTable& t, const TypeName& name, const std::string& where,
                      std::vector<WfViolation>& out, std::set<std::pair<std::string, TypeName>>& seen) {
  if (t.is_declared(name)) return;
  if (!seen.insert({where, name}).second) return;
  out.push_back({WfViolation::Kind::UndefinedType, where, "undeclared type " + name});
}

void scan_expr_types(const DeclTable& t, const Expr& e, const std::string& where,
                     std::vector<WfViolation>& out, std::set<std::pair<std::string, TypeName>>& seen) {
  if (const auto* s = e.get_if<StructLitExpr>()) {
    require_declared(t, s->type_name, where, out, seen);
    for (const auto& a : s->args) scan_expr_types(t, *a, where, out, seen);
  } else if (const auto* c = e.get_if<CallExpr>()) {
    scan_expr_types(t, *c->receiver, where, out, seen);
    for (const auto& a : c->args) scan_expr_types(t, *a, where, out, seen);
  } else if (const auto* f = e.get_if<SelectExpr>()) {
    scan_expr_types(t, *f->receiver, where, out, seen);
  } else if (const auto* a = e.get_if<AssertExpr>()) {
    require_declared(t, a->type_name, where, out, seen);
    scan_expr_types(t, *a->receiver, where, out, seen);
  }
}

void scan_sig_types(const DeclTable& t, const MethodSignature& sig, const std::string& where,
                    std::vector<WfViolation>& out, std::set<std::pair<std::string, TypeName>>& seen) {
  for (const auto& [pn, pt] : sig.params) require_declared(t, pt, where, out, seen);
  require_declared(t, sig.result, where, out, seen);
}

}  // namespace

std::vector<WfViolation> check_conditions(const DeclTable& table, CheckOptions opts) {
  std::vector<WfViolation> out;
  std::set<std::pair<std::string, TypeName>> seen_undef;

  const Program& p = table.program();
  for (const auto& d : p.decls) {
    if (const auto* td = std::get_if<TypeDecl>(&d)) {
      if (td->is_struct()) {
        // FG2: field names distinct per struct.
        std::set<std::string> names;
        for (const auto& [fname, ftype] : td->as_struct().fields) {
          if (!names.insert(fname).second)
            out.push_back({WfViolation::Kind::DupField, td->name, "duplicate field " + fname});
          require_declared(table, ftype, td->name, out, seen_undef);
        }
      } else {
        // FG3: method names distinct per interface.
        std::set<std::string> names;
        for (const auto& spec : td->as_interface().specs) {
          if (!names.insert(spec.name).second)
            out.push_back({WfViolation::Kind::DupMethodSpec, td->name,
                           "duplicate method specification " + spec.name});
          scan_sig_types(table, spec.sig, td->name, out, seen_undef);
        }
      }
    } else {
      const auto& md = std::get<MethodDecl>(d);
      std::string where = md.name + "/" + md.receiver_type;
      if (!table.is_declared(md.receiver_type)) {
        require_declared(table, md.receiver_type, where, out, seen_undef);
      } else if (!table.is_struct(md.receiver_type)) {
        out.push_back({WfViolation::Kind::ReceiverNotStruct, where,
                       "receiver type " + md.receiver_type + " is not a struct"});
      }
      std::set<std::string> names;
      names.insert(md.receiver_var);
      for (const auto& [pn, pt] : md.sig.params) {
        if (!names.insert(pn).second)
          out.push_back({WfViolation::Kind::DupField, where, "duplicate parameter " + pn});
      }
      scan_sig_types(table, md.sig, where, out, seen_undef);
      scan_expr_types(table, *md.body, where, out, seen_undef);
    }
  }
  scan_expr_types(table, *p.main, "main", out, seen_undef);

  // FG1: structs must be non-recursive. Cycle detection over struct-typed
  // field edges; interface edges optionally included in strict mode.
  enum class Mark { None, Active, Done };
  std::map<TypeName, Mark> marks;
  std::set<TypeName> cyclic;

  auto edges_of = [&](const TypeName& s) {
    std::vector<TypeName> next;
    const TypeDecl* td = table.type_decl(s);
    if (td == nullptr) return next;
    if (td->is_struct()) {
      for (const auto& [fname, ftype] : td->as_struct().fields) {
        if (table.is_struct(ftype)) next.push_back(ftype);
        else if (opts.strict_interface_cycles && table.is_interface(ftype)) next.push_back(ftype);
      }
    } else if (opts.strict_interface_cycles) {
      // In strict mode an interface edge reaches every implementing struct.
      for (const auto& s2 : table.struct_order()) {
        auto sub = table.subtype(s2, s);
        if (sub.ok() && sub.value()) next.push_back(s2);
      }
    }
    return next;
  };

  std::function<void(const TypeName&)> visit = [&](const TypeName& n) {
    Mark& m = marks[n];
    if (m == Mark::Done) return;
    if (m == Mark::Active) {
      cyclic.insert(n);
      return;
    }
    m = Mark::Active;
    for (const auto& n2 : edges_of(n)) visit(n2);
    marks[n] = Mark::Done;
  };
  for (const auto& s : table.struct_order()) visit(s);
  for (const auto& s : table.struct_order())
    if (cyclic.count(s))
      out.push_back({WfViolation::Kind::RecursiveStruct, s, "struct embeds itself"});

  return out;
}

std::vector<std::string> param_name_lint(const DeclTable& table) {
  std::vector<std::string> warnings;
  // Collect every spec in the program together with its origin.
  std::vector<std::pair<std::string, MethodSpec>> all;
  for (const auto& d : table.program().decls) {
    if (const auto* td = std::get_if<TypeDecl>(&d)) {
      if (!td->is_struct())
        for (const auto& s : td->as_interface().specs) all.emplace_back(td->name, s);
    } else {
      const auto& md = std::get<MethodDecl>(d);
      all.emplace_back(md.name + "/" + md.receiver_type, MethodSpec{md.name, md.sig});
    }
  }
  auto erased = [](const MethodSpec& s) {
    MethodSpec t = s;
    for (auto& [pn, pt] : t.sig.params) pn.clear();
    return t;
  };
  for (std::size_t i = 0; i < all.size(); ++i) {
    for (std::size_t j = i + 1; j < all.size(); ++j) {
      if (all[i].second == all[j].second) continue;
      if (erased(all[i].second) == erased(all[j].second)) {
        warnings.push_back("specs for " + all[i].second.name + " in " + all[i].first + " and " +
                           all[j].first + " differ only in parameter names; subtyping compares "
                           "them as distinct");
      }
    }
  }
  return warnings;
}

}  // namespace fgdict::fg
