#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "adra/sensing.hpp"

namespace adra {

// Per-column add/subtract module driven by the three sense-amplifier outputs.
// select = 0 adds, select = 1 computes A - B (A is the v_gread1 row).
struct ModuleInputs {
  bool or_bit = false;
  bool and_bit = false;
  bool b_bit = false;
  bool c_in = false;
  bool select = false;
};

struct ModuleOutput {
  bool sum = false;
  bool carry = false;

  friend bool operator==(const ModuleOutput&, const ModuleOutput&) = default;
};

struct DualModuleOutput {
  ModuleOutput add;
  ModuleOutput sub;
};

// Full adder on (A, B or NOT B, c_in), evaluated from the sensed signals:
//   add: propagate = OR . NOT(AND),  generate = AND
//   sub: propagate = AND + NOT(OR),  generate = OR . NOT(B)
// Throws UnreachableTriple.
ModuleOutput compute_module(const ModuleInputs& in);

// XOR + AOI21 variant producing both results in the same cycle.
DualModuleOutput compute_module_dual(const SenseOutcome& triple, bool c_in);

struct WordOpResult {
  std::vector<bool> sum_bits;  // n + 1 bits, LSB first, two's complement
  bool carry_out = false;
  bool zero_flag = false;
  bool sign_bit = false;

  // Signed value of sum_bits.
  std::int64_t value() const;
};

// Ripple through n modules seeded with c_in = select, plus an (n+1)th module
// that sees the same triple as module n (sign extension). Triples are
// LSB first.
WordOpResult word_op(std::span<const SenseOutcome> triples, bool select);

enum class Comparison : std::uint8_t { Less, Equal, Greater };
std::string_view to_string(Comparison c) noexcept;

// Zero detector: balanced tree of 2-input AND gates over the complemented
// inputs. gates is set to the number of gates used (inputs - 1).
bool and_tree_all_zero(const std::vector<bool>& bits,
                       std::size_t* gates = nullptr);

// Signed comparison of A and B through one subtraction.
Comparison compare(std::span<const SenseOutcome> triples);

// Gate-level bookkeeping of the peripheral additions, for the energy model's
// peripheral term and for reports.
struct GateOverhead {
  int extra_muxes = 2;            // over the prior-art adder module
  int extra_not = 1;
  int extra_nor = 1;
  int dual_variant_extra_transistors = 4;
};

constexpr std::size_t and_tree_gate_count(std::size_t n_bits) noexcept {
  return n_bits == 0 ? 0 : n_bits - 1;
}

}  // namespace adra
