#include "fgdict/tl_interp.hpp"

#include <algorithm>

#include "fgdict/tl_printer.hpp"

namespace fgdict::tl {

namespace {

void max_percent_index(const TLExpr& e, std::uint64_t& mx) {
  auto consider = [&mx](const std::string& name) {
    if (name.size() < 2 || name[0] != '%') return;
    std::uint64_t v = 0;
    for (std::size_t i = 1; i < name.size(); ++i) {
      char c = name[i];
      if (c < '0' || c > '9') return;
      v = v * 10 + static_cast<std::uint64_t>(c - '0');
    }
    mx = std::max(mx, v);
  };
  if (const auto* v = e.get_if<VarE>()) {
    consider(v->name);
  } else if (const auto* app = e.get_if<AppE>()) {
    max_percent_index(*app->fn, mx);
    max_percent_index(*app->arg, mx);
  } else if (const auto* lam = e.get_if<LamE>()) {
    consider(lam->param);
    max_percent_index(*lam->body, mx);
  } else if (const auto* c = e.get_if<CaseE>()) {
    max_percent_index(*c->scrutinee, mx);
    for (const auto& cls : c->clauses) {
      for (const auto& v2 : cls.vars) consider(v2);
      max_percent_index(*cls.body, mx);
    }
  }
}

bool in_set(const std::set<std::string>& s, const std::string& x) { return s.count(x) != 0; }

TLExprPtr subst_rec(const TLExprPtr& e, const std::vector<std::pair<std::string, TLExprPtr>>& binds,
                    const std::set<std::string>& avoid, std::uint64_t& fresh) {
  if (binds.empty()) return e;
  if (const auto* v = e->get_if<VarE>()) {
    for (const auto& [name, repl] : binds)
      if (name == v->name) return repl;
    return e;
  }
  if (e->get_if<MethodVarE>() || e->get_if<ConE>() || e->get_if<HoleE>()) return e;
  if (const auto* app = e->get_if<AppE>()) {
    return make_app(subst_rec(app->fn, binds, avoid, fresh),
                    subst_rec(app->arg, binds, avoid, fresh));
  }
  if (const auto* lam = e->get_if<LamE>()) {
    std::vector<std::pair<std::string, TLExprPtr>> inner;
    for (const auto& b : binds)
      if (b.first != lam->param) inner.push_back(b);
    if (inner.empty()) return e;
    if (in_set(avoid, lam->param)) {
      std::string renamed = "%" + std::to_string(++fresh);
      std::vector<std::pair<std::string, TLExprPtr>> rename{{lam->param, make_var(renamed)}};
      TLExprPtr body = subst_rec(lam->body, rename, {}, fresh);
      return make_lam(renamed, subst_rec(body, inner, avoid, fresh));
    }
    return make_lam(lam->param, subst_rec(lam->body, inner, avoid, fresh));
  }
  const auto* c = e->get_if<CaseE>();
  TLExprPtr scrut = subst_rec(c->scrutinee, binds, avoid, fresh);
  std::vector<Clause> clauses;
  clauses.reserve(c->clauses.size());
  for (const auto& cls : c->clauses) {
    std::vector<std::pair<std::string, TLExprPtr>> inner;
    for (const auto& b : binds)
      if (std::find(cls.vars.begin(), cls.vars.end(), b.first) == cls.vars.end())
        inner.push_back(b);
    if (inner.empty()) {
      clauses.push_back(cls);
      continue;
    }
    bool collision = std::any_of(cls.vars.begin(), cls.vars.end(),
                                 [&](const std::string& v) { return in_set(avoid, v); });
    if (collision) {
      std::vector<std::string> vars = cls.vars;
      std::vector<std::pair<std::string, TLExprPtr>> rename;
      for (auto& v : vars) {
        if (in_set(avoid, v)) {
          std::string renamed = "%" + std::to_string(++fresh);
          rename.emplace_back(v, make_var(renamed));
          v = renamed;
        }
      }
      TLExprPtr body = subst_rec(cls.body, rename, {}, fresh);
      clauses.push_back({cls.con, std::move(vars), subst_rec(body, inner, avoid, fresh)});
    } else {
      clauses.push_back({cls.con, cls.vars, subst_rec(cls.body, inner, avoid, fresh)});
    }
  }
  return make_case(std::move(scrut), std::move(clauses));
}

}  // namespace

TLExprPtr substitute(const TLExprPtr& e,
                     const std::vector<std::pair<std::string, TLExprPtr>>& binds,
                     std::uint64_t& fresh_counter) {
  std::set<std::string> avoid;
  for (const auto& [name, repl] : binds) {
    FreeVars fv = tl_free_vars(*repl);
    avoid.insert(fv.term.begin(), fv.term.end());
  }
  return subst_rec(e, binds, avoid, fresh_counter);
}

namespace {

struct ConSpine {
  std::string con;
  std::vector<TLExprPtr> args;
};

// Splits a value application spine headed by a constructor.
std::optional<ConSpine> con_spine(const TLExprPtr& e) {
  if (const auto* k = e->get_if<ConE>()) return ConSpine{k->name, {}};
  if (const auto* app = e->get_if<AppE>()) {
    auto head = con_spine(app->fn);
    if (!head || !is_value(*app->arg)) return std::nullopt;
    head->args.push_back(app->arg);
    return head;
  }
  return std::nullopt;
}

class Evaluator {
 public:
  Evaluator(const MethodBindings& mu, const TLExprPtr& root) : mu_(mu) {
    max_percent_index(*root, fresh_);
    for (const auto& [name, body] : mu.ordered()) max_percent_index(*body, fresh_);
  }

  StepResult step(const TLExprPtr& e) {
    if (is_value(*e)) {
      auto v = to_value(*e);
      return AtValue{*v};
    }
    return step_impl(e);
  }

 private:
  const MethodBindings& mu_;
  std::uint64_t fresh_ = 0;

  StepResult step_impl(const TLExprPtr& e) {
    if (e->get_if<VarE>() || e->get_if<HoleE>()) return Stuck{e};

    if (const auto* app = e->get_if<AppE>()) {
      if (!is_value(*app->fn)) {
        StepResult r = step_impl(app->fn);
        if (auto* st = std::get_if<Stepped>(&r)) return Stepped{make_app(st->next, app->arg)};
        return r;
      }
      if (!is_value(*app->arg)) {
        StepResult r = step_impl(app->arg);
        if (auto* st = std::get_if<Stepped>(&r)) return Stepped{make_app(app->fn, st->next)};
        return r;
      }
      if (const auto* lam = app->fn->get_if<LamE>()) {
        return Stepped{substitute(lam->body, {{lam->param, app->arg}}, fresh_)};
      }
      if (const auto* mv = app->fn->get_if<MethodVarE>()) {
        const TLExprPtr* binding = mu_.find(mv->name);
        if (binding == nullptr) throw UnboundMethodVarError(mv->name);
        return Stepped{make_app(*binding, app->arg)};
      }
      return Stuck{e};
    }

    if (const auto* c = e->get_if<CaseE>()) {
      if (!is_value(*c->scrutinee)) {
        StepResult r = step_impl(c->scrutinee);
        if (auto* st = std::get_if<Stepped>(&r)) return Stepped{make_case(st->next, c->clauses)};
        return r;
      }
      auto spine = con_spine(c->scrutinee);
      if (!spine) return Stuck{e};  // lambda or method-name scrutinee
      for (const auto& cls : c->clauses) {
        if (cls.con != spine->con) continue;
        if (cls.vars.size() != spine->args.size()) break;  // distinct-cons: no other clause can match
        std::vector<std::pair<std::string, TLExprPtr>> binds;
        binds.reserve(cls.vars.size());
        for (std::size_t i = 0; i < cls.vars.size(); ++i)
          binds.emplace_back(cls.vars[i], spine->args[i]);
        return Stepped{substitute(cls.body, binds, fresh_)};
      }
      return Panicked{e};
    }

    return Stuck{e};  // unreachable: values handled by caller
  }
};

TLOutcome run_loop(const MethodBindings& mu, const TLExprPtr& e, std::uint64_t budget,
                   const std::function<void(std::uint64_t, const TLExprPtr&)>& on_step) {
  Evaluator ev(mu, e);
  TLExprPtr cur = e;
  for (std::uint64_t steps = 0;; ++steps) {
    if (is_value(*cur)) return {TLOutcome::Kind::Value, steps, to_value(*cur), nullptr};
    if (steps == budget) return {TLOutcome::Kind::BudgetExhausted, steps, std::nullopt, cur};
    StepResult r = ev.step(cur);
    if (auto* st = std::get_if<Stepped>(&r)) {
      cur = st->next;
      if (on_step) on_step(steps + 1, cur);
      continue;
    }
    if (auto* p = std::get_if<Panicked>(&r))
      return {TLOutcome::Kind::Panic, steps, std::nullopt, p->witness};
    throw InternalStuckError(print_expr(*std::get<Stuck>(r).witness));
  }
}

}  // namespace

StepResult tl_step(const MethodBindings& mu, const TLExprPtr& e) {
  Evaluator ev(mu, e);
  return ev.step(e);
}

TLOutcome tl_run_expr(const MethodBindings& mu, const TLExprPtr& e, std::uint64_t budget,
                      const std::function<void(std::uint64_t, const TLExprPtr&)>& on_step) {
  FreeVars fv = tl_free_vars(*e);
  if (!fv.term.empty()) throw FreeVariableError(*fv.term.begin());
  for (const auto& m : fv.method)
    if (mu.find(m) == nullptr) throw UnboundMethodVarError(m);
  return run_loop(mu, e, budget, on_step);
}

TLOutcome tl_run(const TLProgram& prog, std::uint64_t budget,
                 const std::function<void(std::uint64_t, const TLExprPtr&)>& on_step) {
  for (const auto& [name, body] : prog.bindings.ordered()) {
    FreeVars fv = tl_free_vars(*body);
    if (!fv.term.empty()) throw FreeVariableError(*fv.term.begin());
    for (const auto& m : fv.method)
      if (prog.bindings.find(m) == nullptr) throw UnboundMethodVarError(m);
  }
  return tl_run_expr(prog.bindings, prog.main, budget, on_step);
}

TLExprPtr plug(const TLExprPtr& context, const TLExprPtr& filler) {
  if (context->get_if<HoleE>()) return filler;
  if (const auto* app = context->get_if<AppE>())
    return make_app(plug(app->fn, filler), plug(app->arg, filler));
  if (const auto* lam = context->get_if<LamE>())
    return make_lam(lam->param, plug(lam->body, filler));
  if (const auto* c = context->get_if<CaseE>()) {
    std::vector<Clause> clauses;
    clauses.reserve(c->clauses.size());
    for (const auto& cls : c->clauses) clauses.push_back({cls.con, cls.vars, plug(cls.body, filler)});
    return make_case(plug(c->scrutinee, filler), std::move(clauses));
  }
  return context;
}

std::optional<TLExprPtr> tl_contract(const MethodBindings& mu, const TLExprPtr& redex) {
  std::uint64_t fresh = 0;
  max_percent_index(*redex, fresh);

  if (const auto* app = redex->get_if<AppE>()) {
    if (!is_value(*app->fn) || !is_value(*app->arg)) return std::nullopt;
    if (const auto* lam = app->fn->get_if<LamE>())
      return substitute(lam->body, {{lam->param, app->arg}}, fresh);
    if (const auto* mv = app->fn->get_if<MethodVarE>()) {
      const TLExprPtr* binding = mu.find(mv->name);
      if (binding == nullptr) return std::nullopt;
      return make_app(*binding, app->arg);
    }
    return std::nullopt;
  }
  if (const auto* c = redex->get_if<CaseE>()) {
    if (!is_value(*c->scrutinee)) return std::nullopt;
    auto spine = con_spine(c->scrutinee);
    if (!spine) return std::nullopt;
    for (const auto& cls : c->clauses) {
      if (cls.con != spine->con || cls.vars.size() != spine->args.size()) continue;
      std::vector<std::pair<std::string, TLExprPtr>> binds;
      for (std::size_t i = 0; i < cls.vars.size(); ++i)
        binds.emplace_back(cls.vars[i], spine->args[i]);
      return substitute(cls.body, binds, fresh);
    }
    return std::nullopt;
  }
  return std::nullopt;
}

namespace {

void decompose_rec(const MethodBindings& mu, const TLExprPtr& e,
                   const std::function<TLExprPtr(TLExprPtr)>& rebuild,
                   std::vector<Decomposition>& out) {
  if (tl_contract(mu, e).has_value()) out.push_back({rebuild(make_hole()), e});

  if (const auto* app = e->get_if<AppE>()) {
    decompose_rec(mu, app->fn,
                  [&](TLExprPtr holey) { return rebuild(make_app(std::move(holey), app->arg)); },
                  out);
    // V [.]: the argument position is active only under a value function.
    if (is_value(*app->fn)) {
      decompose_rec(mu, app->arg,
                    [&](TLExprPtr holey) { return rebuild(make_app(app->fn, std::move(holey))); },
                    out);
    }
    return;
  }
  if (const auto* c = e->get_if<CaseE>()) {
    decompose_rec(mu, c->scrutinee,
                  [&](TLExprPtr holey) { return rebuild(make_case(std::move(holey), c->clauses)); },
                  out);
    return;
  }
}

}  // namespace

std::vector<Decomposition> tl_decompose_all(const MethodBindings& mu, const TLExprPtr& e) {
  std::vector<Decomposition> out;
  decompose_rec(mu, e, [](TLExprPtr holey) { return holey; }, out);
  return out;
}

}  // namespace fgdict::tl
