#include "fgdict/fg_interp.hpp"

#include "fgdict/fg_printer.hpp"

namespace fgdict::fg {

namespace {

// Applies fg-field / fg-call / fg-assert to a candidate redex whose relevant
// subterms are already values. Returns nullopt when no rule fires (values,
// failed assertions, ill-typed shapes).
std::optional<ExprPtr> contract_direct(const DeclTable& table, const Expr& e) {
  if (const auto* sel = e.get_if<SelectExpr>()) {
    if (!is_value(*sel->receiver)) return std::nullopt;
    const auto* lit = sel->receiver->get_if<StructLitExpr>();
    const TypeDecl* td = table.type_decl(lit->type_name);
    if (td == nullptr || !td->is_struct()) return std::nullopt;
    const auto& fields = td->as_struct().fields;
    for (std::size_t i = 0; i < fields.size(); ++i) {
      if (fields[i].first == sel->field) {
        if (i >= lit->args.size()) return std::nullopt;
        return lit->args[i];
      }
    }
    return std::nullopt;
  }
  if (const auto* call = e.get_if<CallExpr>()) {
    if (!is_value(*call->receiver)) return std::nullopt;
    for (const auto& a : call->args)
      if (!is_value(*a)) return std::nullopt;
    const auto* lit = call->receiver->get_if<StructLitExpr>();
    auto decl = table.method_lookup(call->method, lit->type_name);
    if (!decl.ok()) return std::nullopt;
    const MethodDecl* md = decl.value();
    if (md->sig.params.size() != call->args.size()) return std::nullopt;
    std::vector<std::pair<std::string, ExprPtr>> binds;
    binds.emplace_back(md->receiver_var, call->receiver);
    for (std::size_t i = 0; i < call->args.size(); ++i)
      binds.emplace_back(md->sig.params[i].first, call->args[i]);
    return substitute(md->body, binds);
  }
  if (const auto* as = e.get_if<AssertExpr>()) {
    if (!is_value(*as->receiver)) return std::nullopt;
    const auto* lit = as->receiver->get_if<StructLitExpr>();
    auto sub = table.subtype(lit->type_name, as->type_name);
    if (!sub.ok() || !sub.value()) return std::nullopt;
    return as->receiver;
  }
  return std::nullopt;
}

// Distinguishes a failed assertion (panic) from plain stuckness once the
// receiver is a value and no rule fires.
bool is_panic_redex(const DeclTable& table, const Expr& e) {
  const auto* as = e.get_if<AssertExpr>();
  if (as == nullptr || !is_value(*as->receiver)) return false;
  const auto* lit = as->receiver->get_if<StructLitExpr>();
  auto sub = table.subtype(lit->type_name, as->type_name);
  return sub.ok() && !sub.value();
}

StepResult step_impl(const DeclTable& table, const ExprPtr& e) {
  if (const auto* v = e->get_if<VarExpr>()) return FreeVar{v->name};
  if (e->get_if<HoleExpr>()) return Stuck{e};

  if (const auto* s = e->get_if<StructLitExpr>()) {
    for (std::size_t i = 0; i < s->args.size(); ++i) {
      if (is_value(*s->args[i])) continue;
      StepResult r = step_impl(table, s->args[i]);
      if (auto* st = std::get_if<Stepped>(&r)) {
        std::vector<ExprPtr> args = s->args;
        args[i] = st->next;
        return Stepped{make_struct_lit(s->type_name, std::move(args))};
      }
      return r;
    }
    return AtValue{to_value(*e)};
  }

  if (const auto* sel = e->get_if<SelectExpr>()) {
    if (!is_value(*sel->receiver)) {
      StepResult r = step_impl(table, sel->receiver);
      if (auto* st = std::get_if<Stepped>(&r)) return Stepped{make_select(st->next, sel->field)};
      return r;
    }
    if (auto next = contract_direct(table, *e)) return Stepped{*next};
    return Stuck{e};
  }

  if (const auto* as = e->get_if<AssertExpr>()) {
    if (!is_value(*as->receiver)) {
      StepResult r = step_impl(table, as->receiver);
      if (auto* st = std::get_if<Stepped>(&r)) return Stepped{make_assert(st->next, as->type_name)};
      return r;
    }
    if (auto next = contract_direct(table, *e)) return Stepped{*next};
    if (is_panic_redex(table, *e)) return Panicked{e};
    return Stuck{e};
  }

  const auto* call = e->get_if<CallExpr>();
  if (!is_value(*call->receiver)) {
    StepResult r = step_impl(table, call->receiver);
    if (auto* st = std::get_if<Stepped>(&r))
      return Stepped{make_call(st->next, call->method, call->args)};
    return r;
  }
  for (std::size_t i = 0; i < call->args.size(); ++i) {
    if (is_value(*call->args[i])) continue;
    StepResult r = step_impl(table, call->args[i]);
    if (auto* st = std::get_if<Stepped>(&r)) {
      std::vector<ExprPtr> args = call->args;
      args[i] = st->next;
      return Stepped{make_call(call->receiver, call->method, std::move(args))};
    }
    return r;
  }
  if (auto next = contract_direct(table, *e)) return Stepped{*next};
  return Stuck{e};
}

}  // namespace

StepResult fg_step(const DeclTable& table, const ExprPtr& e) {
  if (is_value(*e)) return AtValue{to_value(*e)};
  return step_impl(table, e);
}

FGOutcome fg_run(const DeclTable& table, const ExprPtr& e, std::uint64_t budget,
                 const std::function<void(std::uint64_t, const ExprPtr&)>& on_step) {
  if (auto fv = free_vars(*e); !fv.empty()) throw FreeVariableError(fv.front());

  ExprPtr cur = e;
  for (std::uint64_t steps = 0;; ++steps) {
    if (is_value(*cur)) return {FGOutcome::Kind::Value, steps, to_value(*cur), nullptr};
    if (steps == budget) return {FGOutcome::Kind::BudgetExhausted, steps, std::nullopt, cur};
    StepResult r = step_impl(table, cur);
    if (auto* st = std::get_if<Stepped>(&r)) {
      cur = st->next;
      if (on_step) on_step(steps + 1, cur);
      continue;
    }
    if (auto* p = std::get_if<Panicked>(&r))
      return {FGOutcome::Kind::Panic, steps, std::nullopt, p->witness};
    if (auto* fv = std::get_if<FreeVar>(&r)) throw FreeVariableError(fv->name);
    throw InternalStuckError(print_expr(*std::get<Stuck>(r).witness));
  }
}

ExprPtr plug(const ExprPtr& context, const ExprPtr& filler) {
  if (context->get_if<HoleExpr>()) return filler;
  if (const auto* c = context->get_if<CallExpr>()) {
    std::vector<ExprPtr> args;
    args.reserve(c->args.size());
    for (const auto& a : c->args) args.push_back(plug(a, filler));
    return make_call(plug(c->receiver, filler), c->method, std::move(args));
  }
  if (const auto* s = context->get_if<StructLitExpr>()) {
    std::vector<ExprPtr> args;
    args.reserve(s->args.size());
    for (const auto& a : s->args) args.push_back(plug(a, filler));
    return make_struct_lit(s->type_name, std::move(args));
  }
  if (const auto* f = context->get_if<SelectExpr>())
    return make_select(plug(f->receiver, filler), f->field);
  if (const auto* t = context->get_if<AssertExpr>())
    return make_assert(plug(t->receiver, filler), t->type_name);
  return context;
}

namespace {

// Enumerates every position that is both a valid evaluation context per the
// grammar (earlier siblings in active positions must be values) and holds a
// directly reducible redex. Deliberately re-derives validity at every node
// instead of following the stepper's single leftmost path.
void decompose_rec(const DeclTable& table, const ExprPtr& e,
                   const std::function<ExprPtr(ExprPtr)>& rebuild,
                   std::vector<Decomposition>& out) {
  if (contract_direct(table, *e).has_value()) {
    out.push_back({rebuild(make_hole()), e});
  }
  if (const auto* s = e->get_if<StructLitExpr>()) {
    // t_S{v.., E, e..}: positions after a non-value are not active.
    for (std::size_t i = 0; i < s->args.size(); ++i) {
      bool active = true;
      for (std::size_t j = 0; j < i; ++j)
        if (!is_value(*s->args[j])) active = false;
      if (!active) continue;
      decompose_rec(table, s->args[i],
                    [&, i](ExprPtr holey) {
                      std::vector<ExprPtr> args = s->args;
                      args[i] = std::move(holey);
                      return rebuild(make_struct_lit(s->type_name, std::move(args)));
                    },
                    out);
    }
    return;
  }
  if (const auto* sel = e->get_if<SelectExpr>()) {
    decompose_rec(table, sel->receiver,
                  [&](ExprPtr holey) { return rebuild(make_select(std::move(holey), sel->field)); },
                  out);
    return;
  }
  if (const auto* as = e->get_if<AssertExpr>()) {
    decompose_rec(table, as->receiver,
                  [&](ExprPtr holey) {
                    return rebuild(make_assert(std::move(holey), as->type_name));
                  },
                  out);
    return;
  }
  if (const auto* c = e->get_if<CallExpr>()) {
    decompose_rec(table, c->receiver,
                  [&](ExprPtr holey) {
                    return rebuild(make_call(std::move(holey), c->method, c->args));
                  },
                  out);
    // v.m(v.., E, e..): argument positions are active only under a value
    // receiver and value earlier arguments.
    if (!is_value(*c->receiver)) return;
    for (std::size_t i = 0; i < c->args.size(); ++i) {
      bool active = true;
      for (std::size_t j = 0; j < i; ++j)
        if (!is_value(*c->args[j])) active = false;
      if (!active) continue;
      decompose_rec(table, c->args[i],
                    [&, i](ExprPtr holey) {
                      std::vector<ExprPtr> args = c->args;
                      args[i] = std::move(holey);
                      return rebuild(make_call(c->receiver, c->method, std::move(args)));
                    },
                    out);
    }
    return;
  }
}

}  // namespace

std::vector<Decomposition> fg_decompose_all(const DeclTable& table, const ExprPtr& e) {
  std::vector<Decomposition> out;
  decompose_rec(table, e, [](ExprPtr holey) { return holey; }, out);
  return out;
}

std::optional<ExprPtr> fg_contract(const DeclTable& table, const ExprPtr& redex) {
  return contract_direct(table, *redex);
}

}  // namespace fgdict::fg
