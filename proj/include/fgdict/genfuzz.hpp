#pragma once

#include <cstdint>
#include <functional>
#include <stdexcept>

#include "fgdict/fg_ast.hpp"

namespace fgdict::gen {

struct GenConfig {
  int max_structs = 4;
  int max_ifaces = 3;
  int max_methods_per_iface = 3;
  int max_fields = 3;
  int max_expr_depth = 4;
  int max_call_fanout = 2;
  double panic_bias = 0.10;
  double diverge_bias = 0.05;
  std::uint64_t seed = 0;
};

struct GenerationExhausted : std::runtime_error {
  GenerationExhausted() : std::runtime_error("generator could not satisfy constraints") {}
};

// Seeded, reproducible generator of condition-clean, translator-accepted
// programs. Divergence enters only through a dedicated self-recursive method
// reached directly from main (probability diverge_bias); failing assertions
// only through a planned bad downcast (probability panic_bias); everything
// else terminates by construction (method bodies call strictly earlier
// methods).
fg::Program gen_program(const GenConfig& cfg);

// Greedy structural shrinking preserving well-formedness, translator
// acceptance, and the failing predicate. Returns a local minimum.
fg::Program shrink(const fg::Program& p, const std::function<bool(const fg::Program&)>& failing);

}  // namespace fgdict::gen
