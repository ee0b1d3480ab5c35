#pragma once

#include <cstddef>
#include <cstdint>
#include <exception>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "adra/compute_unit.hpp"
#include "adra/config.hpp"
#include "adra/energy_model.hpp"
#include "adra/sensing.hpp"

namespace adra {

enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 1,
  kExitConfig = 2,
  kExitMismatch = 3,
  kExitInvariant = 4,
};

// Maps an exception escaping a command onto the exit-code contract.
int exit_code_for(const std::exception& e) noexcept;

inline constexpr std::size_t kMaxVerifyWidth = 12;

enum class Operation : std::uint8_t { Add, Sub, Cmp };
std::string_view to_string(Operation op) noexcept;
std::optional<Operation> parse_operation(std::string_view name) noexcept;

struct Mismatch {
  std::size_t width = 0;
  std::int64_t a = 0;
  std::int64_t b = 0;
  std::string op;
  std::string expected;
  std::string got;
};

struct VerifyReport {
  std::vector<std::size_t> widths;
  std::uint64_t total_cases = 0;  // add, sub and cmp checks
  std::uint64_t mismatch_count = 0;
  std::vector<Mismatch> mismatches;  // first kMaxRecordedMismatches
  std::uint64_t activations = 0;
  AdraLevels levels;
  ReferenceLadder ladder;
  double margin = 0.0;              // amperes
  double min_level_gap = 0.0;       // amperes
  double min_level_gap_delta = 0.0;  // discharge gap over delta at full swing

  static constexpr std::size_t kMaxRecordedMismatches = 32;

  bool passed() const noexcept {
    return mismatch_count == 0 && min_level_gap >= margin;
  }
};

// Exhaustive signed-operand check of add, sub and cmp for widths
// 1..max_width through the whole activation/sensing/compute pipeline.
VerifyReport cmd_verify(const SimConfig& config, std::size_t max_width);

std::string format_verify_report(const VerifyReport& report);
// Level and reference currents in uA, three decimals.
std::string ladder_diagnostics_csv(const VerifyReport& report);

struct SimulateResult {
  Operation op = Operation::Add;
  std::int64_t a = 0;
  std::int64_t b = 0;
  std::vector<SenseOutcome> triples;  // LSB first, a_bit filled
  std::int64_t recovered_a = 0;
  std::int64_t recovered_b = 0;
  WordOpResult word;
  std::optional<Comparison> comparison;
  std::uint64_t activations = 0;
  ScenarioReport report;
};

// Operands are signed word_width-bit values; throws OutOfRange otherwise.
SimulateResult cmd_simulate(const SimConfig& config, Operation op, std::int64_t a,
                            std::int64_t b);
std::string format_simulate_result(const SimulateResult& result);

inline constexpr const char* kSweepCsvHeader =
    "scheme,rows,cols,word_width,P,speedup,energy_decrease_pct,edp_decrease_pct,"
    "rbl_J,wl_J,sense_J,periph_J";

struct SweepResult {
  std::vector<ScenarioReport> reports;
  std::vector<std::string> violations;
  std::string csv;
};

SweepResult cmd_sweep(const SimConfig& config, const std::vector<std::size_t>& sizes,
                      const std::vector<SensingScheme>& schemes);
std::string sweep_csv(const std::vector<ScenarioReport>& reports);

struct CrossoverReport {
  Crossover frequency;
  Crossover parallelism;
  std::string csv;
};

// f* and P* at the configured geometry with the two scheme-energy curves
// sampled 20 points either side of each crossover.
CrossoverReport cmd_crossover(const SimConfig& config);

}  // namespace adra
