#pragma once

#include <array>
#include <optional>

#include "adra/device_model.hpp"
#include "adra/memory_array.hpp"

namespace adra {

// AdraCiM sense-line currents indexed by the stored operand bits, where A
// sits on the v_gread1 row and B on the v_gread2 row.
struct AdraLevels {
  double i00 = 0.0;
  double i10 = 0.0;
  double i01 = 0.0;
  double i11 = 0.0;

  double at(bool a, bool b) const noexcept {
    return a ? (b ? i11 : i10) : (b ? i01 : i00);
  }
  // Ascending order for the default biases: (0,0), (1,0), (0,1), (1,1).
  std::array<double, 4> ascending() const noexcept { return {i00, i10, i01, i11}; }
  double min_gap() const noexcept;
};

AdraLevels adra_levels(const DeviceParams& device, const BiasPlan& bias);
// Prior-art symmetric activation: i10 == i01 by construction.
AdraLevels symmetric_levels(const DeviceParams& device, const BiasPlan& bias);

struct ReferenceLadder {
  double i_ref_or = 0.0;
  double i_ref_b = 0.0;
  double i_ref_and = 0.0;

  // Ordering and interval membership against the levels it was built for.
  void validate(const AdraLevels& levels) const;
};

// Midpoint references between adjacent levels. Throws InsufficientMargin
// naming the offending pair unless every adjacent gap exceeds 2 * margin.
ReferenceLadder build_ladder(const AdraLevels& levels, double margin);
ReferenceLadder build_ladder(const DeviceParams& device, const BiasPlan& bias,
                             double margin);

struct SenseOutcome {
  bool or_bit = false;
  bool and_bit = false;
  bool b_bit = false;
  std::optional<bool> a_bit;

  friend bool operator==(const SenseOutcome&, const SenseOutcome&) = default;
};

bool is_reachable(bool or_bit, bool and_bit, bool b_bit) noexcept;

SenseOutcome sense_current(double i_sl, const ReferenceLadder& ladder);

// A = NOT( NOT(AND) . (B + NOT(OR)) ). Throws UnreachableTriple.
bool recover_a(bool or_bit, bool and_bit, bool b_bit);
// Fills a_bit in place and returns the outcome.
SenseOutcome with_recovered_a(SenseOutcome outcome);

struct VoltageSenseParams {
  double delta = 0.025;  // sense margin, volts
  double cbl = 1e-12;    // read bitline capacitance, farads

  void validate(double v_read) const;

  friend bool operator==(const VoltageSenseParams&,
                         const VoltageSenseParams&) = default;
};

// Bitline discharge i_sl * t / cbl, clamped to v_read.
double bitline_discharge(double i_sl, const VoltageSenseParams& params,
                         double t_sense, double v_read);

// Thresholds at delta, 3*delta and 5*delta of discharge resolve OR, B and AND.
SenseOutcome sense_voltage(double i_sl, const VoltageSenseParams& params,
                           double t_sense, double v_read);

// Sense window that discharges the (1,1) level by exactly 6 * delta.
double full_swing_sense_time(const AdraLevels& levels,
                             const VoltageSenseParams& params);

struct VoltageMargins {
  double min_level_gap = 0.0;         // volts between adjacent level discharges
  double min_threshold_distance = 0.0;  // volts from any level to any threshold
};

// Each level must land in its own threshold bin and adjacent levels must be
// at least delta apart; otherwise throws InsufficientMargin.
VoltageMargins check_voltage_margins(const AdraLevels& levels,
                                     const VoltageSenseParams& params,
                                     double t_sense, double v_read);

// Bitline discharge needed to resolve the activation, in units of delta:
// 2 for a standard read, 6 for AdraCiM. SymmetricCiM throws InvalidParams.
int required_discharge(ActivationMode mode);

}  // namespace adra
