#include "adra/device_model.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "adra/errors.hpp"

namespace adra {

std::string_view to_string(BitState s) noexcept {
  return s == BitState::LRS ? "LRS" : "HRS";
}

void DeviceParams::validate() const {
  if (!std::isfinite(vt_lrs) || !std::isfinite(vt_hrs) ||
      !std::isfinite(transconductance_k) || !std::isfinite(leakage_floor)) {
    throw InvalidParams("device parameters must be finite");
  }
  if (!(vt_hrs > vt_lrs)) {
    throw InvalidParams(
        fmt::format("vt_hrs > vt_lrs required (vt_lrs={}, vt_hrs={})", vt_lrs,
                    vt_hrs));
  }
  if (!(transconductance_k > 0.0)) {
    throw InvalidParams("transconductance_k > 0 required");
  }
  if (leakage_floor < 0.0) {
    throw InvalidParams("leakage_floor >= 0 required");
  }
}

void DeviceParams::validate_separable(double v_gread1, double v_gread2) const {
  validate();
  const double lrs_swing = cell_current(BitState::LRS, v_gread2, *this) -
                           cell_current(BitState::LRS, v_gread1, *this);
  const double hrs_swing = cell_current(BitState::HRS, v_gread2, *this) -
                           cell_current(BitState::HRS, v_gread1, *this);
  if (!(lrs_swing > hrs_swing)) {
    throw InvalidParams(fmt::format(
        "LRS current swing ({:.6g} A) must exceed HRS swing ({:.6g} A) "
        "between v_gread1={} and v_gread2={}",
        lrs_swing, hrs_swing, v_gread1, v_gread2));
  }
}

double cell_current(BitState state, double vg, const DeviceParams& params) {
  params.validate();
  if (!(vg >= 0.0)) {
    throw InvalidParams(fmt::format("gate voltage must be >= 0 (got {})", vg));
  }
  const double overdrive = std::max(0.0, vg - params.threshold(state));
  return params.leakage_floor +
         params.transconductance_k * overdrive * overdrive;
}

double discharge_rate(BitState state, double vg, double cbl,
                      const DeviceParams& params) {
  if (!(cbl > 0.0)) {
    throw InvalidParams(
        fmt::format("bitline capacitance must be > 0 (got {})", cbl));
  }
  return cell_current(state, vg, params) / cbl;
}

}  // namespace adra
