#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "fgdict/equiv.hpp"
#include "fgdict/fg_parser.hpp"
#include "fgdict/fg_printer.hpp"
#include "fgdict/genfuzz.hpp"
#include "fgdict/tl_parser.hpp"
#include "fgdict/tl_printer.hpp"
#include "fgdict/translate.hpp"

namespace {

using nlohmann::json;
using namespace fgdict;

constexpr int kOk = 0;
constexpr int kInputError = 1;
constexpr int kUsageError = 2;

std::optional<std::string> read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct LoadedProgram {
  fg::Program program;
  fg::DeclTable table;
};

// Parses and checks an FG file; prints diagnostics and returns nullopt on
// any input problem.
std::optional<LoadedProgram> load_checked(const std::string& path) {
  auto text = read_file(path);
  if (!text) {
    std::cerr << "error: cannot read " << path << "\n";
    return std::nullopt;
  }
  auto parsed = fg::parse_program(*text);
  if (const auto* err = std::get_if<fg::SyntaxError>(&parsed)) {
    std::cerr << path << ": " << err->to_string() << "\n";
    return std::nullopt;
  }
  auto table = fg::DeclTable::build(std::get<fg::Program>(parsed));
  if (!table.ok()) {
    for (const auto& v : table.error()) std::cerr << path << ": " << v.to_string() << "\n";
    return std::nullopt;
  }
  auto violations = fg::check_conditions(table.value());
  if (!violations.empty()) {
    for (const auto& v : violations) std::cerr << path << ": " << v.to_string() << "\n";
    return std::nullopt;
  }
  return LoadedProgram{table.value().program(), std::move(table).value()};
}

const char* fg_outcome_name(fg::FGOutcome::Kind k) {
  switch (k) {
    case fg::FGOutcome::Kind::Value: return "value";
    case fg::FGOutcome::Kind::Panic: return "panic";
    case fg::FGOutcome::Kind::BudgetExhausted: return "budget-exhausted";
  }
  return "?";
}

const char* tl_outcome_name(tl::TLOutcome::Kind k) {
  switch (k) {
    case tl::TLOutcome::Kind::Value: return "value";
    case tl::TLOutcome::Kind::Panic: return "panic";
    case tl::TLOutcome::Kind::BudgetExhausted: return "budget-exhausted";
  }
  return "?";
}

json verdict_json(const std::string& program_name, const equiv::DiffVerdict& v) {
  json fg_part = {{"outcome", fg_outcome_name(v.fg_outcome.kind)},
                  {"steps", v.fg_outcome.steps}};
  if (v.fg_outcome.value) fg_part["value"] = fg::print_value(*v.fg_outcome.value);
  json tl_part = {{"outcome", tl_outcome_name(v.tl_outcome.kind)},
                  {"steps", v.tl_outcome.steps}};
  if (v.tl_outcome.value) tl_part["value"] = tl::print_value(*v.tl_outcome.value);
  return json{{"program", program_name},
              {"verdict", equiv::verdict_kind_name(v.kind)},
              {"fg", fg_part},
              {"tl", tl_part},
              {"type", v.main_type},
              {"detail", v.detail}};
}

std::string verdict_line(const std::string& program_name, const equiv::DiffVerdict& v) {
  std::ostringstream os;
  os << program_name << ": " << equiv::verdict_kind_name(v.kind) << " (fg "
     << fg_outcome_name(v.fg_outcome.kind) << " in " << v.fg_outcome.steps << " steps, tl "
     << tl_outcome_name(v.tl_outcome.kind) << " in " << v.tl_outcome.steps << " steps)";
  if (!v.detail.empty()) os << " -- " << v.detail;
  return os.str();
}

int cmd_check(const std::string& path) {
  auto loaded = load_checked(path);
  if (!loaded) return kInputError;
  auto translated = trans::translate_program(loaded->table);
  if (!translated.ok()) {
    std::cerr << path << ": " << translated.error().to_string() << "\n";
    return kInputError;
  }
  for (const auto& w : fg::param_name_lint(loaded->table))
    std::cout << path << ": warning: " << w << "\n";
  std::cout << path << ": ok (" << loaded->table.program().decls.size() << " declarations, "
            << translated.value().program.bindings.size() << " method bindings)\n";
  return kOk;
}

int cmd_translate(const std::string& path, const std::string& out_path) {
  auto loaded = load_checked(path);
  if (!loaded) return kInputError;
  auto translated = trans::translate_program(loaded->table);
  if (!translated.ok()) {
    std::cerr << path << ": " << translated.error().to_string() << "\n";
    return kInputError;
  }
  std::string text = tl::print_program(translated.value().program);
  if (out_path.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(out_path, std::ios::binary);
    if (!out) {
      std::cerr << "error: cannot write " << out_path << "\n";
      return kInputError;
    }
    out << text;
  }
  return kOk;
}

int cmd_run(const std::string& path, const std::string& lang, std::uint64_t max_steps,
            bool trace) {
  if (lang == "fg") {
    auto loaded = load_checked(path);
    if (!loaded) return kInputError;
    try {
      auto on_step = trace ? std::function<void(std::uint64_t, const fg::ExprPtr&)>(
                                 [](std::uint64_t n, const fg::ExprPtr& e) {
                                   std::cout << "step " << n << ": " << fg::print_expr(*e) << "\n";
                                 })
                           : nullptr;
      fg::FGOutcome out = fg::fg_run(loaded->table, loaded->program.main, max_steps, on_step);
      switch (out.kind) {
        case fg::FGOutcome::Kind::Value:
          std::cout << "value " << fg::print_value(*out.value) << " (" << out.steps << " steps)\n";
          break;
        case fg::FGOutcome::Kind::Panic:
          std::cout << "panic at " << fg::print_expr(*out.witness) << " (" << out.steps
                    << " steps)\n";
          break;
        case fg::FGOutcome::Kind::BudgetExhausted:
          std::cout << "budget exhausted after " << out.steps
                    << " steps; last expression: " << fg::print_expr(*out.witness) << "\n";
          break;
      }
      return kOk;
    } catch (const std::exception& e) {
      std::cerr << path << ": " << e.what() << "\n";
      return kInputError;
    }
  }
  // lang == "tl"
  auto text = read_file(path);
  if (!text) {
    std::cerr << "error: cannot read " << path << "\n";
    return kInputError;
  }
  auto parsed = tl::parse_program(*text);
  if (const auto* err = std::get_if<tl::TLSyntaxError>(&parsed)) {
    std::cerr << path << ": " << err->to_string() << "\n";
    return kInputError;
  }
  try {
    auto on_step = trace ? std::function<void(std::uint64_t, const tl::TLExprPtr&)>(
                               [](std::uint64_t n, const tl::TLExprPtr& e) {
                                 std::cout << "step " << n << ": " << tl::print_expr(*e) << "\n";
                               })
                         : nullptr;
    tl::TLOutcome out = tl::tl_run(std::get<tl::TLProgram>(parsed), max_steps, on_step);
    switch (out.kind) {
      case tl::TLOutcome::Kind::Value:
        std::cout << "value " << tl::print_value(*out.value) << " (" << out.steps << " steps)\n";
        break;
      case tl::TLOutcome::Kind::Panic:
        std::cout << "panic at " << tl::print_expr(*out.witness) << " (" << out.steps
                  << " steps)\n";
        break;
      case tl::TLOutcome::Kind::BudgetExhausted:
        std::cout << "budget exhausted after " << out.steps
                  << " steps; last expression: " << tl::print_expr(*out.witness) << "\n";
        break;
    }
    return kOk;
  } catch (const std::exception& e) {
    std::cerr << path << ": " << e.what() << "\n";
    return kInputError;
  }
}

int cmd_diff(const std::string& path, equiv::Budgets budgets, bool as_json) {
  if (budgets.tl < budgets.fg) {
    std::cerr << "error: --max-steps-tl must be at least --max-steps-fg\n";
    return kUsageError;
  }
  auto loaded = load_checked(path);
  if (!loaded) return kInputError;
  auto translated = trans::translate_program(loaded->table);
  if (!translated.ok()) {
    std::cerr << path << ": " << translated.error().to_string() << "\n";
    return kInputError;
  }
  auto result = equiv::diff_run_retrying(loaded->table, translated.value(), budgets);
  if (as_json) {
    json j = verdict_json(path, result.verdict);
    j["retries"] = result.retries;
    std::cout << j.dump() << "\n";
  } else {
    std::cout << verdict_line(path, result.verdict);
    if (result.retries > 0) std::cout << " [after " << result.retries << " budget retries]";
    std::cout << "\n";
  }
  return result.verdict.is_violation() ? kInputError : kOk;
}

int cmd_fuzz(gen::GenConfig cfg, int count, bool as_json, const std::string& save_dir,
             equiv::Budgets budgets) {
  int violations = 0, agree_value = 0, agree_panic = 0, inconclusive = 0;
  std::uint64_t base_seed = cfg.seed;
  for (int i = 0; i < count; ++i) {
    cfg.seed = base_seed + static_cast<std::uint64_t>(i);
    std::string name = "seed:" + std::to_string(cfg.seed);
    fg::Program p;
    try {
      p = gen::gen_program(cfg);
    } catch (const gen::GenerationExhausted&) {
      std::cerr << name << ": generation exhausted\n";
      return kUsageError;
    }
    auto table = fg::DeclTable::build(p);
    auto translated = trans::translate_program(table.value());
    auto result = equiv::diff_run_retrying(table.value(), translated.value(), budgets);
    const auto& v = result.verdict;
    if (v.kind == equiv::DiffVerdict::Kind::AgreeValue) ++agree_value;
    else if (v.kind == equiv::DiffVerdict::Kind::AgreePanic) ++agree_panic;
    else if (v.kind == equiv::DiffVerdict::Kind::Inconclusive) ++inconclusive;
    if (v.is_violation()) {
      ++violations;
      if (!save_dir.empty()) {
        auto failing = [&](const fg::Program& q) {
          auto verdict = equiv::diff_run(q, budgets);
          return verdict.ok() && verdict.value().kind == v.kind;
        };
        fg::Program small = gen::shrink(p, failing);
        std::string out_path = save_dir + "/fail_" + std::to_string(cfg.seed) + ".fg";
        std::ofstream out(out_path, std::ios::binary);
        out << fg::print_program(small);
        std::cerr << name << ": shrunk reproducer written to " << out_path << "\n";
      }
    }
    if (as_json) {
      json j = verdict_json(name, v);
      j["retries"] = result.retries;
      std::cout << j.dump() << "\n";
    } else {
      std::cout << verdict_line(name, v) << "\n";
    }
  }
  std::cerr << "fuzz: " << count << " programs, " << agree_value << " agree-value, " << agree_panic
            << " agree-panic, " << inconclusive << " inconclusive, " << violations
            << " violations\n";
  return violations > 0 ? kInputError : kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Featherweight Go dictionary-passing translation and differential tester"};
  app.require_subcommand(1);

  std::uint64_t default_seed = 0;
  if (const char* env_seed = std::getenv("FGDICT_SEED")) {
    default_seed = std::strtoull(env_seed, nullptr, 10);
  }

  auto* check = app.add_subcommand("check", "Well-formedness and translation dry-run");
  std::string check_file;
  check->add_option("file", check_file, "FG source file")->required();

  auto* translate = app.add_subcommand("translate", "Translate an FG program to the target text");
  std::string translate_file, translate_out;
  translate->add_option("file", translate_file, "FG source file")->required();
  translate->add_option("-o,--output", translate_out, "Output file (default stdout)");

  auto* run = app.add_subcommand("run", "Evaluate a program with a step budget");
  std::string run_file, run_lang = "fg";
  std::uint64_t run_steps = 10'000;
  bool run_trace = false;
  run->add_option("file", run_file, "Source file")->required();
  run->add_option("--lang", run_lang, "Language: fg or tl")
      ->check(CLI::IsMember({"fg", "tl"}));
  run->add_option("--max-steps", run_steps, "Step budget");
  run->add_flag("--trace", run_trace, "Print one line per step");

  auto* diff = app.add_subcommand("diff", "Differentially execute source and translation");
  std::string diff_file;
  equiv::Budgets diff_budgets;
  bool diff_json = false;
  diff->add_option("file", diff_file, "FG source file")->required();
  diff->add_option("--max-steps-fg", diff_budgets.fg, "FG step budget");
  diff->add_option("--max-steps-tl", diff_budgets.tl, "TL step budget");
  diff->add_flag("--json", diff_json, "Emit a JSON verdict record");

  auto* fuzz = app.add_subcommand("fuzz", "Differentially test generated programs");
  gen::GenConfig cfg;
  cfg.seed = default_seed;
  int fuzz_count = 100;
  bool fuzz_json = false;
  std::string fuzz_save;
  equiv::Budgets fuzz_budgets;
  fuzz->add_option("--count", fuzz_count, "Number of programs");
  fuzz->add_option("--seed", cfg.seed, "Base seed (FGDICT_SEED overrides the default)");
  fuzz->add_flag("--json", fuzz_json, "One JSON verdict record per line");
  fuzz->add_option("--save-failing", fuzz_save, "Directory for shrunken failing programs");
  fuzz->add_option("--max-structs", cfg.max_structs, "Generator: max struct count");
  fuzz->add_option("--max-ifaces", cfg.max_ifaces, "Generator: max interface count");
  fuzz->add_option("--max-methods-per-iface", cfg.max_methods_per_iface,
                   "Generator: max methods per interface");
  fuzz->add_option("--max-fields", cfg.max_fields, "Generator: max fields per struct");
  fuzz->add_option("--max-expr-depth", cfg.max_expr_depth, "Generator: expression depth");
  fuzz->add_option("--max-call-fanout", cfg.max_call_fanout, "Generator: max call arity");
  fuzz->add_option("--panic-bias", cfg.panic_bias, "Probability of a panicking program");
  fuzz->add_option("--diverge-bias", cfg.diverge_bias, "Probability of a diverging program");
  fuzz->add_option("--max-steps-fg", fuzz_budgets.fg, "FG step budget");
  fuzz->add_option("--max-steps-tl", fuzz_budgets.tl, "TL step budget");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return e.get_exit_code() == 0 ? kOk : kUsageError;
  }

  try {
    if (check->parsed()) return cmd_check(check_file);
    if (translate->parsed()) return cmd_translate(translate_file, translate_out);
    if (run->parsed()) return cmd_run(run_file, run_lang, run_steps, run_trace);
    if (diff->parsed()) return cmd_diff(diff_file, diff_budgets, diff_json);
    if (fuzz->parsed()) return cmd_fuzz(cfg, fuzz_count, fuzz_json, fuzz_save, fuzz_budgets);
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kUsageError;
  }
  return kUsageError;
}
