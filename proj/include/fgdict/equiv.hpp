#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "fgdict/common.hpp"
#include "fgdict/fg_interp.hpp"
#include "fgdict/fg_statics.hpp"
#include "fgdict/tl_interp.hpp"
#include "fgdict/translate.hpp"

namespace fgdict::equiv {

struct Correspondence {
  bool ok;
  std::string explanation;  // names the first mismatching position when !ok
};

// Decidable correspondence between an FG value and a TL value at an FG type:
// struct types compare tags and fields recursively; interface types require
// the tagged dictionary layout with slot i naming exactly the mangled method
// binding for the i-th interface method of the value's dynamic tag. Throws
// std::invalid_argument when t is not declared.
Correspondence value_corresponds(const fg::DeclTable& table, const fg::TypeName& t,
                                 const fg::FGValue& v, const tl::TLValue& V);

struct Budgets {
  std::uint64_t fg = 10'000;
  std::uint64_t tl = 1'000'000;  // translated programs take more steps
};

struct DiffVerdict {
  enum class Kind {
    AgreeValue,
    AgreePanic,
    ValueMismatch,
    FGValueTLPanic,
    FGPanicTLValue,
    FGValueTLTimeout,
    FGPanicTLTimeout,
    FGTimeoutTLValue,
    FGTimeoutTLPanic,
    Inconclusive,
  };

  Kind kind;
  fg::FGOutcome fg_outcome;
  tl::TLOutcome tl_outcome;
  fg::TypeName main_type;
  std::string detail;

  bool is_violation() const;
  bool is_agreement() const { return kind == Kind::AgreeValue || kind == Kind::AgreePanic; }
  bool is_mixed_timeout() const;
};

const char* verdict_kind_name(DiffVerdict::Kind k);

// Single differential run of a condition-clean, translator-accepted program.
Expected<DiffVerdict, trans::TranslateFailure> diff_run(const fg::Program& p, Budgets budgets);

// Internal form for callers that already hold the table and translation.
DiffVerdict diff_run(const fg::DeclTable& table, const trans::TranslateResult& translated,
                     Budgets budgets);

// Mixed-timeout verdicts are loud but only suspected; rerun with 10x budgets
// up to max_retries times before accepting them.
struct RetriedVerdict {
  DiffVerdict verdict;
  int retries = 0;
  Budgets final_budgets;
};
RetriedVerdict diff_run_retrying(const fg::DeclTable& table,
                                 const trans::TranslateResult& translated, Budgets budgets,
                                 int max_retries = 2);

}  // namespace fgdict::equiv
