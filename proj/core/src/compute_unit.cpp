#include "adra/compute_unit.hpp"

#include <fmt/format.h>

#include "adra/errors.hpp"

namespace adra {
namespace {

void require_reachable(bool or_bit, bool and_bit, bool b_bit) {
  if (!is_reachable(or_bit, and_bit, b_bit)) {
    throw UnreachableTriple(fmt::format("sense triple (or={}, and={}, b={})",
                                        int(or_bit), int(and_bit), int(b_bit)));
  }
}

ModuleOutput full_add(bool propagate, bool generate, bool c_in) {
  return {propagate != c_in, generate || (propagate && c_in)};
}

}  // namespace

ModuleOutput compute_module(const ModuleInputs& in) {
  require_reachable(in.or_bit, in.and_bit, in.b_bit);
  // SELECT muxes pick between the add and subtract propagate/generate terms.
  const bool propagate = in.select ? (in.and_bit || !in.or_bit)
                                   : (in.or_bit && !in.and_bit);
  const bool generate = in.select ? (in.or_bit && !in.b_bit) : in.and_bit;
  return full_add(propagate, generate, in.c_in);
}

DualModuleOutput compute_module_dual(const SenseOutcome& t, bool c_in) {
  require_reachable(t.or_bit, t.and_bit, t.b_bit);
  const bool x = t.or_bit && !t.and_bit;  // A XOR B
  DualModuleOutput out;
  out.add = full_add(x, t.and_bit, c_in);
  out.sub = full_add(!x, t.or_bit && !t.b_bit, c_in);
  return out;
}

std::int64_t WordOpResult::value() const {
  if (sum_bits.empty() || sum_bits.size() > 64) {
    throw InvalidParams("result width must be in [1, 64] to decode");
  }
  std::uint64_t raw = 0;
  for (std::size_t i = 0; i < sum_bits.size(); ++i) {
    if (sum_bits[i]) raw |= std::uint64_t{1} << i;
  }
  const std::size_t n = sum_bits.size();
  if (n < 64 && sum_bits.back()) raw |= ~std::uint64_t{0} << n;
  return static_cast<std::int64_t>(raw);
}

WordOpResult word_op(std::span<const SenseOutcome> triples, bool select) {
  if (triples.empty()) {
    throw InvalidParams("word_op needs at least one bit");
  }
  WordOpResult r;
  r.sum_bits.reserve(triples.size() + 1);
  bool carry = select;
  for (std::size_t i = 0; i <= triples.size(); ++i) {
    const SenseOutcome& t = triples[i < triples.size() ? i : triples.size() - 1];
    const ModuleOutput m =
        compute_module({t.or_bit, t.and_bit, t.b_bit, carry, select});
    r.sum_bits.push_back(m.sum);
    carry = m.carry;
  }
  r.carry_out = carry;
  r.sign_bit = r.sum_bits.back();
  r.zero_flag = true;
  for (bool b : r.sum_bits) r.zero_flag = r.zero_flag && !b;
  return r;
}

std::string_view to_string(Comparison c) noexcept {
  switch (c) {
    case Comparison::Less:
      return "Less";
    case Comparison::Equal:
      return "Equal";
    case Comparison::Greater:
      return "Greater";
  }
  return "?";
}

bool and_tree_all_zero(const std::vector<bool>& bits, std::size_t* gates) {
  std::vector<bool> level(bits.size());
  for (std::size_t i = 0; i < bits.size(); ++i) level[i] = !bits[i];
  std::size_t used = 0;
  while (level.size() > 1) {
    std::vector<bool> next;
    next.reserve((level.size() + 1) / 2);
    for (std::size_t i = 0; i + 1 < level.size(); i += 2) {
      next.push_back(level[i] && level[i + 1]);
      ++used;
    }
    if (level.size() % 2 == 1) next.push_back(level.back());
    level = std::move(next);
  }
  if (gates != nullptr) *gates = used;
  return level.empty() ? true : static_cast<bool>(level.front());
}

Comparison compare(std::span<const SenseOutcome> triples) {
  const WordOpResult diff = word_op(triples, true);
  // A - B lies in [-(2^n - 1), 2^n - 1], so the low n bits decide equality.
  const std::vector<bool> low(diff.sum_bits.begin(), diff.sum_bits.end() - 1);
  if (and_tree_all_zero(low)) {
    return Comparison::Equal;
  }
  return diff.sign_bit ? Comparison::Less : Comparison::Greater;
}

}  // namespace adra
