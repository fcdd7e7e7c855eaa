#include "fgdict/equiv.hpp"

#include <sstream>
#include <stdexcept>

#include "fgdict/fg_printer.hpp"
#include "fgdict/tl_printer.hpp"

namespace fgdict::equiv {

namespace {

Correspondence no(std::string why) { return {false, std::move(why)}; }

Correspondence corresponds_rec(const fg::DeclTable& table, const fg::TypeName& t,
                               const fg::FGValue& v, const tl::TLValue& V) {
  const fg::TypeDecl* td = table.type_decl(t);
  if (td == nullptr) throw std::invalid_argument("value_corresponds: undeclared type " + t);

  const auto* con = V.get_if<tl::ConVal>();
  if (con == nullptr) return no("expected constructor value " + trans::mangle_con(t));
  if (con->con != trans::mangle_con(t))
    return no("expected constructor " + trans::mangle_con(t) + ", got " + con->con);
  if (con->args.size() != 1)
    return no(con->con + " must carry exactly one tuple argument, got " +
              std::to_string(con->args.size()));
  const auto* tup = con->args[0].get_if<tl::ConVal>();

  if (td->is_struct()) {
    // red-rel-struct: tags equal, fields correspond at their declared types.
    if (v.type_name != t)
      return no("value tag " + v.type_name + " differs from struct type " + t);
    const auto& fields = td->as_struct().fields;
    if (v.args.size() != fields.size())
      return no("value for " + t + " has " + std::to_string(v.args.size()) + " fields, declared " +
                std::to_string(fields.size()));
    if (tup == nullptr || tup->con != tl::tuple_con(fields.size()) ||
        tup->args.size() != fields.size())
      return no("payload of " + con->con + " is not a " + std::to_string(fields.size()) + "-tuple");
    for (std::size_t i = 0; i < fields.size(); ++i) {
      Correspondence c = corresponds_rec(table, fields[i].second, v.args[i], tup->args[i]);
      if (!c.ok)
        return no("field " + fields[i].first + " of " + t + ": " + c.explanation);
    }
    return {true, ""};
  }

  // red-rel-iface: payload corresponds at the dynamic struct tag, and slot i
  // is exactly the name of the looked-up declaration for the i-th method.
  const auto& specs = td->as_interface().specs;
  if (tup == nullptr || tup->con != tl::tuple_con(specs.size() + 1) ||
      tup->args.size() != specs.size() + 1)
    return no("payload of " + con->con + " is not a " + std::to_string(specs.size() + 1) +
              "-tuple (value plus " + std::to_string(specs.size()) + " dictionary slots)");
  const fg::TypeName& tag = v.type_name;
  if (!table.is_struct(tag)) return no("value tag " + tag + " is not a declared struct");
  Correspondence payload = corresponds_rec(table, tag, v, tup->args[0]);
  if (!payload.ok) return no("payload at " + tag + ": " + payload.explanation);
  for (std::size_t i = 0; i < specs.size(); ++i) {
    const tl::TLValue& slot = tup->args[i + 1];
    const auto* name = slot.get_if<tl::MethodNameVal>();
    std::string wanted = trans::mangle_method(specs[i].name, tag);
    if (name == nullptr)
      return no("dictionary slot " + std::to_string(i + 1) + " of " + t +
                " is not a method name, expected " + wanted);
    if (name->name != wanted)
      return no("dictionary slot " + std::to_string(i + 1) + " of " + t + " is " + name->name +
                ", expected " + wanted);
    if (!table.method_lookup(specs[i].name, tag).ok())
      return no("no declaration behind dictionary slot " + std::to_string(i + 1) + " (" + wanted +
                ")");
  }
  return {true, ""};
}

}  // namespace

Correspondence value_corresponds(const fg::DeclTable& table, const fg::TypeName& t,
                                 const fg::FGValue& v, const tl::TLValue& V) {
  return corresponds_rec(table, t, v, V);
}

bool DiffVerdict::is_violation() const {
  switch (kind) {
    case Kind::ValueMismatch:
    case Kind::FGValueTLPanic:
    case Kind::FGPanicTLValue:
    case Kind::FGValueTLTimeout:
    case Kind::FGPanicTLTimeout:
    case Kind::FGTimeoutTLValue:
    case Kind::FGTimeoutTLPanic:
      return true;
    default:
      return false;
  }
}

bool DiffVerdict::is_mixed_timeout() const {
  switch (kind) {
    case Kind::FGValueTLTimeout:
    case Kind::FGPanicTLTimeout:
    case Kind::FGTimeoutTLValue:
    case Kind::FGTimeoutTLPanic:
      return true;
    default:
      return false;
  }
}

const char* verdict_kind_name(DiffVerdict::Kind k) {
  switch (k) {
    case DiffVerdict::Kind::AgreeValue: return "AgreeValue";
    case DiffVerdict::Kind::AgreePanic: return "AgreePanic";
    case DiffVerdict::Kind::ValueMismatch: return "ValueMismatch";
    case DiffVerdict::Kind::FGValueTLPanic: return "FGValueTLPanic";
    case DiffVerdict::Kind::FGPanicTLValue: return "FGPanicTLValue";
    case DiffVerdict::Kind::FGValueTLTimeout: return "FGValueTLTimeout";
    case DiffVerdict::Kind::FGPanicTLTimeout: return "FGPanicTLTimeout";
    case DiffVerdict::Kind::FGTimeoutTLValue: return "FGTimeoutTLValue";
    case DiffVerdict::Kind::FGTimeoutTLPanic: return "FGTimeoutTLPanic";
    case DiffVerdict::Kind::Inconclusive: return "Inconclusive";
  }
  return "?";
}

DiffVerdict diff_run(const fg::DeclTable& table, const trans::TranslateResult& translated,
                     Budgets budgets) {
  if (budgets.tl < budgets.fg)
    throw std::invalid_argument("diff_run: tl budget must be at least the fg budget");

  DiffVerdict out;
  out.main_type = translated.main_type;
  out.fg_outcome = fg::fg_run(table, table.program().main, budgets.fg);
  out.tl_outcome = tl::tl_run(translated.program, budgets.tl);

  using FK = fg::FGOutcome::Kind;
  using TK = tl::TLOutcome::Kind;
  const auto& f = out.fg_outcome;
  const auto& l = out.tl_outcome;

  if (f.kind == FK::Value && l.kind == TK::Value) {
    Correspondence c = value_corresponds(table, translated.main_type, *f.value, *l.value);
    if (c.ok) {
      out.kind = DiffVerdict::Kind::AgreeValue;
    } else {
      out.kind = DiffVerdict::Kind::ValueMismatch;
      out.detail = c.explanation;
    }
    return out;
  }
  if (f.kind == FK::Panic && l.kind == TK::Panic) {
    out.kind = DiffVerdict::Kind::AgreePanic;
    return out;
  }
  if (f.kind == FK::BudgetExhausted && l.kind == TK::BudgetExhausted) {
    out.kind = DiffVerdict::Kind::Inconclusive;
    out.detail = "both budgets exhausted";
    return out;
  }
  if (f.kind == FK::Value && l.kind == TK::Panic) {
    out.kind = DiffVerdict::Kind::FGValueTLPanic;
    out.detail = "source terminated, target panicked at " + tl::print_expr(*l.witness);
    return out;
  }
  if (f.kind == FK::Panic && l.kind == TK::Value) {
    out.kind = DiffVerdict::Kind::FGPanicTLValue;
    out.detail = "source panicked at " + fg::print_expr(*f.witness) + ", target terminated";
    return out;
  }
  std::string suspected = "suspected -- retry with larger budgets";
  if (f.kind == FK::Value) {
    out.kind = DiffVerdict::Kind::FGValueTLTimeout;
  } else if (f.kind == FK::Panic) {
    out.kind = DiffVerdict::Kind::FGPanicTLTimeout;
  } else if (l.kind == TK::Value) {
    out.kind = DiffVerdict::Kind::FGTimeoutTLValue;
  } else {
    out.kind = DiffVerdict::Kind::FGTimeoutTLPanic;
  }
  out.detail = suspected;
  return out;
}

Expected<DiffVerdict, trans::TranslateFailure> diff_run(const fg::Program& p, Budgets budgets) {
  auto table = fg::DeclTable::build(p);
  if (!table.ok()) return trans::TranslateFailure{table.error(), std::nullopt};
  auto violations = fg::check_conditions(table.value());
  if (!violations.empty()) return trans::TranslateFailure{std::move(violations), std::nullopt};
  auto translated = trans::translate_program(table.value());
  if (!translated.ok()) return trans::TranslateFailure{{}, translated.error()};
  return diff_run(table.value(), translated.value(), budgets);
}

RetriedVerdict diff_run_retrying(const fg::DeclTable& table,
                                 const trans::TranslateResult& translated, Budgets budgets,
                                 int max_retries) {
  RetriedVerdict out{diff_run(table, translated, budgets), 0, budgets};
  while (out.verdict.is_mixed_timeout() && out.retries < max_retries) {
    budgets.fg *= 10;
    budgets.tl *= 10;
    ++out.retries;
    out.verdict = diff_run(table, translated, budgets);
    out.final_budgets = budgets;
  }
  return out;
}

}  // namespace fgdict::equiv
