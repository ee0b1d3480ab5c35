#pragma once

#include <cstdint>
#include <string_view>

namespace adra {

// Stored polarization of a 1T-FeFET bitcell. LRS (+P) is logical '1',
// HRS (-P) is logical '0'.
enum class BitState : std::uint8_t { HRS = 0, LRS = 1 };

constexpr BitState to_state(bool bit) noexcept {
  return bit ? BitState::LRS : BitState::HRS;
}
constexpr bool to_bit(BitState s) noexcept { return s == BitState::LRS; }

std::string_view to_string(BitState s) noexcept;

// Steady-state two-threshold FeFET model. Units: volts, amperes/volt^2,
// amperes.
//
// Defaults keep the four asymmetric dual-row levels more than 1 uA apart
// at the default read biases (V_GREAD1 = 0.83 V, V_GREAD2 = 1 V).
struct DeviceParams {
  double vt_lrs = 0.0;
  double vt_hrs = 1.2;
  double transconductance_k = 10e-6;
  double leakage_floor = 0.05e-6;

  // Throws InvalidParams. The separability check is done against the given
  // pair of read gate voltages.
  void validate() const;
  void validate_separable(double v_gread1, double v_gread2) const;

  double threshold(BitState s) const noexcept {
    return s == BitState::LRS ? vt_lrs : vt_hrs;
  }

  friend bool operator==(const DeviceParams&, const DeviceParams&) = default;
};

// Drain current of one cell:
//   leakage_floor + k * max(0, vg - vt(state))^2
double cell_current(BitState state, double vg, const DeviceParams& params);

// Rate at which the cell discharges a read bitline of capacitance cbl (V/s).
double discharge_rate(BitState state, double vg, double cbl,
                      const DeviceParams& params);

}  // namespace adra
