#include "fgdict/genfuzz.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fgdict/fg_statics.hpp"
#include "fgdict/translate.hpp"

namespace fgdict::gen {

using fg::DeclTable;
using fg::Expr;
using fg::ExprPtr;
using fg::MethodDecl;
using fg::MethodSignature;
using fg::MethodSpec;
using fg::Program;
using fg::TypeName;

namespace {

// splitmix64; chosen for stable cross-platform streams.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  int below(int n) { return n <= 0 ? 0 : static_cast<int>(next() % static_cast<std::uint64_t>(n)); }

  bool chance(double p) {
    if (p <= 0.0) return false;
    if (p >= 1.0) return true;
    return (next() >> 11) < static_cast<std::uint64_t>(p * 9007199254740992.0);
  }

  template <class T>
  const T& pick(const std::vector<T>& v) {
    return v[static_cast<std::size_t>(below(static_cast<int>(v.size())))];
  }

 private:
  std::uint64_t state_;
};

constexpr const char* kSpinMethod = "spin";
constexpr const char* kVacantMethod = "mvac";

struct MethodInfo {
  TypeName receiver;
  std::string name;
  MethodSignature sig;
  int rank;  // index in overall method order; bodies may call only lower ranks
};

struct Generated {
  std::vector<TypeName> structs;          // declaration order
  std::vector<bool> ground;               // same index as structs
  std::vector<TypeName> ifaces;           // non-vacant interfaces
  std::optional<TypeName> vacant;         // interface no struct implements
  std::optional<TypeName> hold;           // struct with one field per iface
  std::map<TypeName, std::vector<std::pair<std::string, TypeName>>> fields;
  std::map<TypeName, std::vector<MethodSpec>> iface_specs;
  std::vector<MethodInfo> methods;        // declaration order, ranks assigned
  bool diverging = false;
  bool panicking = false;
};

class Generator {
 public:
  Generator(const GenConfig& cfg, std::uint64_t seed) : cfg_(cfg), rng_(seed) {}

  Program run() {
    plan_types();
    plan_methods();
    plan_ifaces();
    build_metadata();
    Program p;
    emit_decls(p);
    gen_bodies();
    p.decls = decls_;
    p.main = gen_main();
    return p;
  }

 private:
  const GenConfig& cfg_;
  Rng rng_;
  Generated g_;
  std::vector<fg::Decl> decls_;

  // Derived metadata.
  std::vector<TypeName> all_types_;                     // constructible types
  std::map<TypeName, std::vector<TypeName>> implementers_;  // iface -> structs, decl order
  std::map<TypeName, int> min_depth_;                   // literal nesting required
  std::map<TypeName, std::vector<std::pair<TypeName, std::string>>> fields_of_type_;
  std::map<TypeName, std::vector<int>> methods_by_result_;  // result type -> method ranks

  bool struct_is_ground(const TypeName& s) const {
    for (std::size_t i = 0; i < g_.structs.size(); ++i)
      if (g_.structs[i] == s) return g_.ground[i];
    return false;
  }

  void plan_types() {
    int n_structs = 1 + rng_.below(std::max(0, cfg_.max_structs) + 1);
    for (int i = 0; i < n_structs; ++i) {
      g_.structs.push_back("S" + std::to_string(i));
      g_.ground.push_back(i == 0 || rng_.chance(0.6));
    }
    int n_ifaces = rng_.below(std::max(0, cfg_.max_ifaces) + 1);
    for (int i = 0; i < n_ifaces; ++i) g_.ifaces.push_back("I" + std::to_string(i));
    if (!g_.ifaces.empty() && rng_.chance(0.20)) g_.vacant = "IVac";
    if (!g_.ifaces.empty()) g_.hold = "Hold";

    g_.diverging = rng_.chance(cfg_.diverge_bias);
    if (!g_.diverging) g_.panicking = rng_.chance(cfg_.panic_bias);

    // Fields. Ground structs embed only earlier ground structs; the rest may
    // also use any earlier struct or any non-vacant interface.
    for (std::size_t i = 0; i < g_.structs.size(); ++i) {
      std::vector<std::pair<std::string, TypeName>> fs;
      int n_fields = rng_.below(std::max(0, cfg_.max_fields) + 1);
      std::vector<TypeName> ground_pool, any_pool;
      for (std::size_t j = 0; j < i; ++j) {
        any_pool.push_back(g_.structs[j]);
        if (g_.ground[j]) ground_pool.push_back(g_.structs[j]);
      }
      for (int k = 0; k < n_fields; ++k) {
        TypeName ft;
        if (g_.ground[i]) {
          if (ground_pool.empty()) break;
          ft = rng_.pick(ground_pool);
        } else if (!g_.ifaces.empty() && rng_.chance(0.35)) {
          ft = rng_.pick(g_.ifaces);
        } else if (!any_pool.empty()) {
          ft = rng_.pick(any_pool);
        } else if (!g_.ifaces.empty()) {
          ft = rng_.pick(g_.ifaces);
        } else {
          break;
        }
        fs.emplace_back("f" + std::to_string(k), ft);
      }
      g_.fields[g_.structs[i]] = std::move(fs);
    }
    if (g_.hold) {
      std::vector<std::pair<std::string, TypeName>> fs;
      for (std::size_t k = 0; k < g_.ifaces.size(); ++k)
        fs.emplace_back("h" + std::to_string(k), g_.ifaces[k]);
      g_.fields[*g_.hold] = std::move(fs);
    }
  }

  std::vector<TypeName> sig_type_pool() const {
    std::vector<TypeName> pool = g_.structs;
    if (g_.hold) pool.push_back(*g_.hold);
    for (const auto& i : g_.ifaces) pool.push_back(i);
    return pool;
  }

  void plan_methods() {
    std::vector<std::string> name_pool;
    int pool_size = std::max(2, std::min<int>(6, static_cast<int>(g_.structs.size()) + 1));
    for (int i = 0; i < pool_size; ++i) name_pool.push_back("m" + std::to_string(i));
    std::vector<TypeName> pool = sig_type_pool();

    int rank = 0;
    for (const auto& s : g_.structs) {
      int want = rng_.below(std::max(0, cfg_.max_methods_per_iface) + 1);
      std::vector<std::string> available = name_pool;
      for (int k = 0; k < want && !available.empty(); ++k) {
        // Prefer copying an existing shape now and then so several structs
        // share a spec; that is what gives interfaces multiple implementers.
        std::optional<MethodInfo> copied;
        if (!g_.methods.empty() && rng_.chance(0.4)) {
          const MethodInfo& src = rng_.pick(g_.methods);
          bool taken = false;
          for (const auto& m : g_.methods)
            if (m.receiver == s && m.name == src.name) taken = true;
          if (!taken) copied = src;
        }
        MethodInfo mi;
        mi.receiver = s;
        mi.rank = rank;
        if (copied) {
          mi.name = copied->name;
          mi.sig = copied->sig;
          available.erase(std::remove(available.begin(), available.end(), mi.name),
                          available.end());
        } else {
          int idx = rng_.below(static_cast<int>(available.size()));
          mi.name = available[static_cast<std::size_t>(idx)];
          available.erase(available.begin() + idx);
          bool taken = false;
          for (const auto& m : g_.methods)
            if (m.receiver == s && m.name == mi.name) taken = true;
          if (taken) continue;
          int n_params = rng_.below(std::max(0, cfg_.max_call_fanout) + 1);
          for (int pi = 0; pi < n_params; ++pi)
            mi.sig.params.emplace_back("x" + std::to_string(pi), rng_.pick(pool));
          mi.sig.result = rng_.pick(pool);
        }
        ++rank;
        g_.methods.push_back(std::move(mi));
      }
    }
    if (g_.diverging) {
      MethodInfo spin;
      spin.receiver = g_.structs.front();
      spin.name = kSpinMethod;
      spin.sig.result = g_.structs.front();
      spin.rank = rank;
      g_.methods.push_back(std::move(spin));
    }
  }

  void plan_ifaces() {
    for (std::size_t k = 0; k < g_.ifaces.size(); ++k) {
      // Source specs from a ground struct so every interface has a
      // constructible implementer. Reusing an earlier interface's source
      // makes subset/superset interface pairs likely.
      std::vector<TypeName> sources;
      for (std::size_t i = 0; i < g_.structs.size(); ++i) {
        if (!g_.ground[i]) continue;
        for (const auto& m : g_.methods)
          if (m.receiver == g_.structs[i] && m.name != kSpinMethod) {
            sources.push_back(g_.structs[i]);
            break;
          }
      }
      std::vector<MethodSpec> specs;
      if (!sources.empty()) {
        TypeName src = rng_.pick(sources);
        if (k > 0 && rng_.chance(0.3)) {
          const auto& prev = g_.iface_specs[g_.ifaces[rng_.below(static_cast<int>(k))]];
          if (!prev.empty()) {
            // Subset of an earlier interface.
            for (const auto& sp : prev)
              if (rng_.chance(0.6)) specs.push_back(sp);
          }
        }
        if (specs.empty()) {
          std::vector<MethodSpec> from_src;
          for (const auto& m : g_.methods)
            if (m.receiver == src && m.name != kSpinMethod)
              from_src.push_back({m.name, m.sig});
          int take = rng_.below(std::min<int>(cfg_.max_methods_per_iface,
                                              static_cast<int>(from_src.size())) +
                                1);
          // Shuffled subset; dictionary order then differs from source order.
          for (int t = 0; t < take && !from_src.empty(); ++t) {
            int idx = rng_.below(static_cast<int>(from_src.size()));
            specs.push_back(from_src[static_cast<std::size_t>(idx)]);
            from_src.erase(from_src.begin() + idx);
          }
        }
      }
      g_.iface_specs[g_.ifaces[k]] = std::move(specs);
    }
    if (g_.vacant) {
      MethodSpec spec;
      spec.name = kVacantMethod;
      spec.sig.result = g_.structs.front();
      g_.iface_specs[*g_.vacant] = {spec};
    }
  }

  bool struct_implements(const TypeName& s, const TypeName& iface) const {
    for (const auto& spec : g_.iface_specs.at(iface)) {
      bool found = false;
      for (const auto& m : g_.methods)
        if (m.receiver == s && m.name == spec.name && m.sig == spec.sig) found = true;
      if (!found) return false;
    }
    return true;
  }

  void build_metadata() {
    std::vector<TypeName> all_structs = g_.structs;
    if (g_.hold) all_structs.push_back(*g_.hold);

    for (const auto& i : g_.ifaces) {
      std::vector<TypeName> impls;
      for (const auto& s : all_structs)
        if (struct_implements(s, i)) impls.push_back(s);
      implementers_[i] = std::move(impls);
    }

    // Literal nesting depth by fixpoint; everything non-vacant converges by
    // the ground-struct sourcing discipline.
    const int inf = 1 << 20;
    for (const auto& s : all_structs) min_depth_[s] = inf;
    for (const auto& i : g_.ifaces) min_depth_[i] = inf;
    bool changed = true;
    while (changed) {
      changed = false;
      for (const auto& s : all_structs) {
        int d = 1;
        for (const auto& [fn, ft] : g_.fields[s]) d = std::max(d, 1 + min_depth_[ft]);
        d = std::min(d, inf);
        if (d < min_depth_[s]) {
          min_depth_[s] = d;
          changed = true;
        }
      }
      for (const auto& i : g_.ifaces) {
        int d = inf;
        for (const auto& s : implementers_[i]) d = std::min(d, min_depth_[s]);
        if (d < min_depth_[i]) {
          min_depth_[i] = d;
          changed = true;
        }
      }
    }
    for (const auto& [t, d] : min_depth_)
      if (d >= inf) throw GenerationExhausted();

    all_types_ = all_structs;
    for (const auto& i : g_.ifaces) all_types_.push_back(i);

    for (const auto& s : all_structs)
      for (const auto& [fn, ft] : g_.fields[s]) fields_of_type_[ft].emplace_back(s, fn);

    for (std::size_t r = 0; r < g_.methods.size(); ++r) {
      if (g_.methods[r].name == kSpinMethod) continue;
      methods_by_result_[g_.methods[r].sig.result].push_back(static_cast<int>(r));
    }
  }

  void emit_decls(Program&) {
    for (const auto& s : g_.structs)
      decls_.push_back(fg::TypeDecl{s, fg::StructLiteral{g_.fields[s]}});
    if (g_.hold) decls_.push_back(fg::TypeDecl{*g_.hold, fg::StructLiteral{g_.fields[*g_.hold]}});
    for (const auto& i : g_.ifaces)
      decls_.push_back(fg::TypeDecl{i, fg::InterfaceLiteral{g_.iface_specs[i]}});
    if (g_.vacant)
      decls_.push_back(fg::TypeDecl{*g_.vacant, fg::InterfaceLiteral{g_.iface_specs[*g_.vacant]}});
  }

  bool is_struct_name(const TypeName& t) const {
    if (g_.hold && t == *g_.hold) return true;
    return std::find(g_.structs.begin(), g_.structs.end(), t) != g_.structs.end();
  }

  ExprPtr min_literal(const TypeName& t) {
    if (is_struct_name(t)) {
      std::vector<ExprPtr> args;
      for (const auto& [fn, ft] : g_.fields[t]) args.push_back(min_literal(ft));
      return fg::make_struct_lit(t, std::move(args));
    }
    // Interface: minimal implementer.
    const auto& impls = implementers_.at(t);
    TypeName best = impls.front();
    for (const auto& s : impls)
      if (min_depth_[s] < min_depth_[best]) best = s;
    return min_literal(best);
  }

  // An interface-typed expression whose runtime payload tag is statically
  // known: a selection from a literal of the holder struct.
  std::optional<ExprPtr> iface_expr_with_tag(const TypeName& iface, const TypeName& tag) {
    if (!g_.hold) return std::nullopt;
    const auto& hold_fields = g_.fields[*g_.hold];
    for (std::size_t k = 0; k < hold_fields.size(); ++k) {
      if (hold_fields[k].second != iface) continue;
      std::vector<ExprPtr> args;
      for (std::size_t j = 0; j < hold_fields.size(); ++j)
        args.push_back(j == k ? min_literal(tag) : min_literal(hold_fields[j].second));
      return fg::make_select(fg::make_struct_lit(*g_.hold, std::move(args)), hold_fields[k].first);
    }
    return std::nullopt;
  }

  struct Ctx {
    bool in_body = false;
    int rank = 0;  // bodies may call methods with strictly smaller rank
    const std::vector<std::pair<std::string, TypeName>>* env = nullptr;
  };

  bool call_allowed(const Ctx& ctx, int method_rank) const {
    if (!ctx.in_body) return true;
    return method_rank < ctx.rank;
  }

  ExprPtr gen_exact(const Ctx& ctx, const TypeName& goal, int depth) {
    bool structural = is_struct_name(goal);
    if (depth <= min_depth_[goal]) {
      if (structural) return min_literal(goal);
      auto e = iface_expr_with_tag(goal, rng_.pick(implementers_.at(goal)));
      if (e) return *e;
      return min_literal(goal);  // unreachable: hold exists whenever ifaces do
    }

    for (int attempt = 0; attempt < 6; ++attempt) {
      int choice = rng_.below(10);
      // Environment variable of exactly the goal type.
      if (choice < 2 && ctx.env != nullptr) {
        std::vector<std::string> names;
        for (const auto& [n, t] : *ctx.env)
          if (t == goal) names.push_back(n);
        if (!names.empty()) return fg::make_var(rng_.pick(names));
        continue;
      }
      // Field selection yielding the goal type.
      if (choice < 4) {
        auto it = fields_of_type_.find(goal);
        if (it == fields_of_type_.end()) continue;
        const auto& [owner, field] = rng_.pick(it->second);
        return fg::make_select(gen_exact(ctx, owner, depth - 1), field);
      }
      // Call returning the goal type.
      if (choice < 7) {
        auto it = methods_by_result_.find(goal);
        if (it == methods_by_result_.end()) continue;
        std::vector<int> usable;
        for (int r : it->second)
          if (call_allowed(ctx, r)) usable.push_back(r);
        if (usable.empty()) continue;
        const MethodInfo& m = g_.methods[static_cast<std::size_t>(rng_.pick(usable))];
        return gen_call(ctx, m, depth);
      }
      // Succeeding assertion.
      if (choice < 8) {
        if (auto e = gen_assert(ctx, goal, depth, /*should_fail=*/false)) return *e;
        continue;
      }
      break;
    }
    if (structural) return gen_literal(ctx, goal, depth);
    auto e = iface_expr_with_tag(goal, rng_.pick(implementers_.at(goal)));
    return e ? *e : min_literal(goal);
  }

  ExprPtr gen_literal(const Ctx& ctx, const TypeName& s, int depth) {
    std::vector<ExprPtr> args;
    for (const auto& [fn, ft] : g_.fields[s]) args.push_back(gen_sub(ctx, ft, depth - 1));
    return fg::make_struct_lit(s, std::move(args));
  }

  // Expression whose synthesized type is a subtype of the goal; used at
  // coercion demand positions (fields, call arguments, method results).
  ExprPtr gen_sub(const Ctx& ctx, const TypeName& goal, int depth) {
    if (is_struct_name(goal)) return gen_exact(ctx, goal, depth);
    int roll = rng_.below(10);
    if (roll < 4) return gen_exact(ctx, goal, depth);
    if (roll < 8) {
      // Struct implementer; the translator inserts the upcast.
      return gen_exact(ctx, rng_.pick(implementers_.at(goal)), depth);
    }
    // Another interface whose spec set covers the goal's.
    std::vector<TypeName> wider;
    for (const auto& j : g_.ifaces) {
      if (j == goal) continue;
      const auto& have = g_.iface_specs[j];
      bool covers = true;
      for (const auto& spec : g_.iface_specs[goal]) {
        if (std::find(have.begin(), have.end(), spec) == have.end()) covers = false;
      }
      if (covers && !implementers_[j].empty()) wider.push_back(j);
    }
    if (!wider.empty()) return gen_exact(ctx, rng_.pick(wider), depth);
    return gen_exact(ctx, rng_.pick(implementers_.at(goal)), depth);
  }

  ExprPtr gen_call(const Ctx& ctx, const MethodInfo& m, int depth) {
    // Receiver: struct dispatch, or interface dispatch from main when some
    // interface carries this spec.
    ExprPtr recv;
    bool via_iface = false;
    if (!ctx.in_body && rng_.chance(0.5)) {
      std::vector<TypeName> carriers;
      for (const auto& i : g_.ifaces) {
        for (const auto& spec : g_.iface_specs[i])
          if (spec.name == m.name && spec.sig == m.sig &&
              std::find(implementers_[i].begin(), implementers_[i].end(), m.receiver) !=
                  implementers_[i].end())
            carriers.push_back(i);
      }
      if (!carriers.empty()) {
        if (auto e = iface_expr_with_tag(rng_.pick(carriers), m.receiver)) {
          recv = *e;
          via_iface = true;
        }
      }
    }
    if (!via_iface) recv = gen_exact(ctx, m.receiver, depth - 1);
    std::vector<ExprPtr> args;
    for (const auto& [pn, pt] : m.sig.params) args.push_back(gen_sub(ctx, pt, depth - 1));
    return fg::make_call(std::move(recv), m.name, std::move(args));
  }

  // Assertion with statically known outcome. Returns the expression or
  // nullopt when no (interface, tag, target) combination fits.
  std::optional<ExprPtr> gen_assert(const Ctx& ctx, const TypeName& goal, int depth,
                                    bool should_fail) {
    (void)ctx;
    (void)depth;
    std::vector<std::pair<std::pair<TypeName, TypeName>, TypeName>> options;  // ((iface, tag), target)
    for (const auto& i : g_.ifaces) {
      for (const auto& tag : implementers_[i]) {
        if (!should_fail) {
          // Target is the goal itself; succeeding needs tag <: goal.
          if (is_struct_name(goal)) {
            if (tag == goal) options.push_back({{i, tag}, goal});
          } else {
            if (struct_implements(tag, goal)) options.push_back({{i, tag}, goal});
          }
        } else {
          // Failing: struct target != tag, or an interface the tag misses.
          if (is_struct_name(goal)) {
            if (tag != goal && struct_implements(goal, i)) options.push_back({{i, tag}, goal});
          } else {
            if (!struct_implements(tag, goal)) options.push_back({{i, tag}, goal});
          }
        }
      }
    }
    if (options.empty()) return std::nullopt;
    const auto& [src, target] = rng_.pick(options);
    auto recv = iface_expr_with_tag(src.first, src.second);
    if (!recv) return std::nullopt;
    return fg::make_assert(*recv, target);
  }

  void gen_bodies() {
    for (const auto& m : g_.methods) {
      MethodDecl md;
      md.receiver_var = "self";
      md.receiver_type = m.receiver;
      md.name = m.name;
      md.sig = m.sig;
      if (m.name == kSpinMethod) {
        md.body = fg::make_call(fg::make_var("self"), kSpinMethod, {});
      } else {
        std::vector<std::pair<std::string, TypeName>> env;
        env.emplace_back("self", m.receiver);
        for (const auto& p : m.sig.params) env.push_back(p);
        Ctx ctx{true, m.rank, &env};
        md.body = gen_sub(ctx, m.sig.result, cfg_.max_expr_depth);
      }
      decls_.push_back(std::move(md));
    }
  }

  ExprPtr gen_main() {
    Ctx ctx{false, 0, nullptr};
    if (g_.diverging) {
      return fg::make_call(min_literal(g_.structs.front()), kSpinMethod, {});
    }
    if (g_.panicking) {
      // A failing downcast; targets include the vacant interface, whose
      // destructor has an empty clause list.
      std::vector<TypeName> targets = g_.structs;
      for (const auto& i : g_.ifaces) targets.push_back(i);
      if (g_.vacant) targets.push_back(*g_.vacant);
      for (int attempt = 0; attempt < 20; ++attempt) {
        TypeName goal = rng_.pick(targets);
        bool fits = true;
        if (goal == g_.structs.front() && g_.structs.size() == 1) fits = false;
        if (!fits) continue;
        if (auto e = gen_failing_assert(goal)) {
          // Sometimes bury the panic inside an outer literal argument.
          if (rng_.chance(0.3)) {
            auto host = host_with_field_of(goal);
            if (host) return *host;
          }
          return *e;
        }
      }
      // No failing assertion possible with these declarations.
    }
    TypeName goal = rng_.pick(all_types_);
    return gen_exact(ctx, goal, cfg_.max_expr_depth);
  }

  std::optional<ExprPtr> pending_panic_;

  std::optional<ExprPtr> gen_failing_assert(const TypeName& target) {
    Ctx ctx{false, 0, nullptr};
    auto e = gen_assert(ctx, target, cfg_.max_expr_depth, /*should_fail=*/true);
    if (e) pending_panic_ = e;
    return e;
  }

  std::optional<ExprPtr> host_with_field_of(const TypeName& t) {
    if (!pending_panic_) return std::nullopt;
    auto it = fields_of_type_.find(t);
    if (it == fields_of_type_.end()) return std::nullopt;
    const auto& [owner, field] = it->second.front();
    // Rebuild the owner literal with the panicking expression in the first
    // position of matching type; struct arguments evaluate left to right, so
    // an earlier diverging/failing field would shadow it. Use it only when
    // the matching field is first.
    const auto& fs = g_.fields[owner];
    if (fs.empty() || fs.front().second != t || fs.front().first != field) return std::nullopt;
    std::vector<ExprPtr> args;
    args.push_back(*pending_panic_);
    for (std::size_t j = 1; j < fs.size(); ++j) args.push_back(min_literal(fs[j].second));
    return fg::make_struct_lit(owner, std::move(args));
  }
};

bool accepted(const Program& p) {
  auto table = DeclTable::build(p);
  if (!table.ok()) return false;
  if (!fg::check_conditions(table.value()).empty()) return false;
  return trans::translate_program(table.value()).ok();
}

}  // namespace

Program gen_program(const GenConfig& cfg) {
  for (int attempt = 0; attempt < 32; ++attempt) {
    std::uint64_t seed = cfg.seed + 0x1000003ull * static_cast<std::uint64_t>(attempt);
    try {
      Generator g(cfg, seed);
      Program p = g.run();
      if (accepted(p)) return p;
    } catch (const GenerationExhausted&) {
      // retry with the derived seed
    }
  }
  throw GenerationExhausted();
}

namespace {

std::size_t program_size(const Program& p) {
  std::size_t n = fg::node_count(*p.main);
  for (const auto& d : p.decls) {
    n += 4;
    if (const auto* md = std::get_if<MethodDecl>(&d)) n += fg::node_count(*md->body);
    if (const auto* td = std::get_if<fg::TypeDecl>(&d)) {
      if (td->is_struct()) n += td->as_struct().fields.size();
      else n += td->as_interface().specs.size() * 2;
    }
  }
  return n;
}

void proper_subexprs(const ExprPtr& e, std::vector<ExprPtr>& out) {
  if (const auto* c = e->get_if<fg::CallExpr>()) {
    out.push_back(c->receiver);
    proper_subexprs(c->receiver, out);
    for (const auto& a : c->args) {
      out.push_back(a);
      proper_subexprs(a, out);
    }
  } else if (const auto* s = e->get_if<fg::StructLitExpr>()) {
    for (const auto& a : s->args) {
      out.push_back(a);
      proper_subexprs(a, out);
    }
  } else if (const auto* f = e->get_if<fg::SelectExpr>()) {
    out.push_back(f->receiver);
    proper_subexprs(f->receiver, out);
  } else if (const auto* t = e->get_if<fg::AssertExpr>()) {
    out.push_back(t->receiver);
    proper_subexprs(t->receiver, out);
  }
}

// Drops argument k from every literal of struct s.
ExprPtr drop_literal_arg(const ExprPtr& e, const TypeName& s, std::size_t k) {
  auto rec = [&](const ExprPtr& sub) { return drop_literal_arg(sub, s, k); };
  if (const auto* c = e->get_if<fg::CallExpr>()) {
    std::vector<ExprPtr> args;
    for (const auto& a : c->args) args.push_back(rec(a));
    return fg::make_call(rec(c->receiver), c->method, std::move(args));
  }
  if (const auto* lit = e->get_if<fg::StructLitExpr>()) {
    std::vector<ExprPtr> args;
    for (std::size_t i = 0; i < lit->args.size(); ++i) {
      if (lit->type_name == s && i == k) continue;
      args.push_back(rec(lit->args[i]));
    }
    return fg::make_struct_lit(lit->type_name, std::move(args));
  }
  if (const auto* f = e->get_if<fg::SelectExpr>()) return fg::make_select(rec(f->receiver), f->field);
  if (const auto* t = e->get_if<fg::AssertExpr>())
    return fg::make_assert(rec(t->receiver), t->type_name);
  return e;
}

// Drops argument k from every call of method m.
ExprPtr drop_call_arg(const ExprPtr& e, const std::string& m, std::size_t k) {
  auto rec = [&](const ExprPtr& sub) { return drop_call_arg(sub, m, k); };
  if (const auto* c = e->get_if<fg::CallExpr>()) {
    std::vector<ExprPtr> args;
    for (std::size_t i = 0; i < c->args.size(); ++i) {
      if (c->method == m && i == k) continue;
      args.push_back(rec(c->args[i]));
    }
    return fg::make_call(rec(c->receiver), c->method, std::move(args));
  }
  if (const auto* lit = e->get_if<fg::StructLitExpr>()) {
    std::vector<ExprPtr> args;
    for (const auto& a : lit->args) args.push_back(rec(a));
    return fg::make_struct_lit(lit->type_name, std::move(args));
  }
  if (const auto* f = e->get_if<fg::SelectExpr>()) return fg::make_select(rec(f->receiver), f->field);
  if (const auto* t = e->get_if<fg::AssertExpr>())
    return fg::make_assert(rec(t->receiver), t->type_name);
  return e;
}

std::vector<Program> shrink_candidates(const Program& p) {
  std::vector<Program> out;

  // Drop one declaration.
  for (std::size_t i = 0; i < p.decls.size(); ++i) {
    Program q = p;
    q.decls.erase(q.decls.begin() + static_cast<std::ptrdiff_t>(i));
    out.push_back(std::move(q));
  }

  // Main shrinks to a proper subexpression.
  std::vector<ExprPtr> subs;
  proper_subexprs(p.main, subs);
  for (const auto& s : subs) {
    Program q = p;
    q.main = s;
    out.push_back(std::move(q));
  }

  // A method body shrinks to one of its proper subexpressions.
  for (std::size_t i = 0; i < p.decls.size(); ++i) {
    const auto* md = std::get_if<MethodDecl>(&p.decls[i]);
    if (md == nullptr) continue;
    std::vector<ExprPtr> body_subs;
    proper_subexprs(md->body, body_subs);
    for (const auto& s : body_subs) {
      Program q = p;
      MethodDecl smaller = *md;
      smaller.body = s;
      q.decls[i] = std::move(smaller);
      out.push_back(std::move(q));
    }
  }

  // Drop a struct field together with the matching literal arguments.
  for (std::size_t i = 0; i < p.decls.size(); ++i) {
    const auto* td = std::get_if<fg::TypeDecl>(&p.decls[i]);
    if (td == nullptr || !td->is_struct()) continue;
    for (std::size_t k = 0; k < td->as_struct().fields.size(); ++k) {
      Program q;
      q.main = drop_literal_arg(p.main, td->name, k);
      for (std::size_t j = 0; j < p.decls.size(); ++j) {
        if (j == i) {
          fg::TypeDecl smaller = *td;
          auto& fs = std::get<fg::StructLiteral>(smaller.literal).fields;
          fs.erase(fs.begin() + static_cast<std::ptrdiff_t>(k));
          q.decls.push_back(std::move(smaller));
        } else if (const auto* md = std::get_if<MethodDecl>(&p.decls[j])) {
          MethodDecl m2 = *md;
          m2.body = drop_literal_arg(m2.body, td->name, k);
          q.decls.push_back(std::move(m2));
        } else {
          q.decls.push_back(p.decls[j]);
        }
      }
      out.push_back(std::move(q));
    }
  }

  // Drop a method parameter together with matching call arguments and
  // interface spec parameters.
  for (std::size_t i = 0; i < p.decls.size(); ++i) {
    const auto* md = std::get_if<MethodDecl>(&p.decls[i]);
    if (md == nullptr) continue;
    for (std::size_t k = 0; k < md->sig.params.size(); ++k) {
      Program q;
      q.main = drop_call_arg(p.main, md->name, k);
      for (std::size_t j = 0; j < p.decls.size(); ++j) {
        if (const auto* m2 = std::get_if<MethodDecl>(&p.decls[j])) {
          MethodDecl smaller = *m2;
          smaller.body = drop_call_arg(smaller.body, md->name, k);
          if (smaller.name == md->name && smaller.sig == md->sig)
            smaller.sig.params.erase(smaller.sig.params.begin() +
                                     static_cast<std::ptrdiff_t>(k));
          q.decls.push_back(std::move(smaller));
        } else {
          const auto* td = std::get_if<fg::TypeDecl>(&p.decls[j]);
          if (td != nullptr && !td->is_struct()) {
            fg::TypeDecl smaller = *td;
            for (auto& spec : std::get<fg::InterfaceLiteral>(smaller.literal).specs)
              if (spec.name == md->name && spec.sig == md->sig)
                spec.sig.params.erase(spec.sig.params.begin() + static_cast<std::ptrdiff_t>(k));
            q.decls.push_back(std::move(smaller));
          } else {
            q.decls.push_back(p.decls[j]);
          }
        }
      }
      out.push_back(std::move(q));
    }
  }

  return out;
}

}  // namespace

Program shrink(const Program& p, const std::function<bool(const Program&)>& failing) {
  Program cur = p;
  std::size_t cur_size = program_size(cur);
  int evals = 0;
  bool improved = true;
  while (improved && evals < 20000) {
    improved = false;
    for (Program& cand : shrink_candidates(cur)) {
      ++evals;
      if (program_size(cand) >= cur_size) continue;
      if (!accepted(cand)) continue;
      if (!failing(cand)) continue;
      cur = std::move(cand);
      cur_size = program_size(cur);
      improved = true;
      break;
    }
  }
  return cur;
}

}  // namespace fgdict::gen
