#include "adra/sensing.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <fmt/format.h>

#include "adra/errors.hpp"

namespace adra {
namespace {

constexpr std::array<const char*, 4> kLevelNames = {"(0,0)", "(1,0)", "(0,1)",
                                                    "(1,1)"};

}  // namespace

double AdraLevels::min_gap() const noexcept {
  const auto l = ascending();
  double gap = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i + 1 < l.size(); ++i) gap = std::min(gap, l[i + 1] - l[i]);
  return gap;
}

AdraLevels adra_levels(const DeviceParams& device, const BiasPlan& bias) {
  const auto cell = [&](bool bit, double vg) {
    return cell_current(to_state(bit), vg, device);
  };
  AdraLevels l;
  l.i00 = cell(false, bias.v_gread1) + cell(false, bias.v_gread2);
  l.i10 = cell(true, bias.v_gread1) + cell(false, bias.v_gread2);
  l.i01 = cell(false, bias.v_gread1) + cell(true, bias.v_gread2);
  l.i11 = cell(true, bias.v_gread1) + cell(true, bias.v_gread2);
  return l;
}

AdraLevels symmetric_levels(const DeviceParams& device, const BiasPlan& bias) {
  BiasPlan symmetric = bias;
  symmetric.v_gread1 = bias.v_gread2;
  return adra_levels(device, symmetric);
}

void ReferenceLadder::validate(const AdraLevels& levels) const {
  if (!(i_ref_or < i_ref_b && i_ref_b < i_ref_and)) {
    throw InvalidParams("reference ladder must satisfy i_ref_or < i_ref_b < i_ref_and");
  }
  const auto l = levels.ascending();
  const std::array<double, 3> refs = {i_ref_or, i_ref_b, i_ref_and};
  for (std::size_t k = 0; k < refs.size(); ++k) {
    if (!(l[k] < refs[k] && refs[k] < l[k + 1])) {
      throw InvalidParams(fmt::format(
          "reference {} ({:.6g} A) does not lie strictly between {} and {}", k,
          refs[k], kLevelNames[k], kLevelNames[k + 1]));
    }
  }
}

ReferenceLadder build_ladder(const AdraLevels& levels, double margin) {
  if (!(margin > 0.0)) {
    throw InvalidParams("sense margin must be > 0");
  }
  const auto l = levels.ascending();
  for (std::size_t k = 0; k + 1 < l.size(); ++k) {
    const double gap = l[k + 1] - l[k];
    if (!(gap > 2.0 * margin)) {
      throw InsufficientMargin(fmt::format(
          "levels {} and {} are {:.6g} A apart; need more than 2 x {:.6g} A",
          kLevelNames[k], kLevelNames[k + 1], gap, margin));
    }
  }
  ReferenceLadder ladder{0.5 * (l[0] + l[1]), 0.5 * (l[1] + l[2]),
                         0.5 * (l[2] + l[3])};
  ladder.validate(levels);
  return ladder;
}

ReferenceLadder build_ladder(const DeviceParams& device, const BiasPlan& bias,
                             double margin) {
  return build_ladder(adra_levels(device, bias), margin);
}

bool is_reachable(bool or_bit, bool and_bit, bool b_bit) noexcept {
  // AND implies B implies OR.
  return (!and_bit || b_bit) && (!b_bit || or_bit);
}

SenseOutcome sense_current(double i_sl, const ReferenceLadder& ladder) {
  SenseOutcome out;
  out.or_bit = i_sl > ladder.i_ref_or;
  out.b_bit = i_sl > ladder.i_ref_b;
  out.and_bit = i_sl > ladder.i_ref_and;
  return out;
}

bool recover_a(bool or_bit, bool and_bit, bool b_bit) {
  if (!is_reachable(or_bit, and_bit, b_bit)) {
    throw UnreachableTriple(fmt::format("sense triple (or={}, and={}, b={})",
                                        int(or_bit), int(and_bit), int(b_bit)));
  }
  // OAI gate: NOT( NOT(AB) . (B + NOT(A+B)) )
  return !(!and_bit && (b_bit || !or_bit));
}

SenseOutcome with_recovered_a(SenseOutcome outcome) {
  outcome.a_bit = recover_a(outcome.or_bit, outcome.and_bit, outcome.b_bit);
  return outcome;
}

void VoltageSenseParams::validate(double v_read) const {
  if (!(delta > 0.0)) {
    throw InvalidParams("voltage sense margin delta must be > 0");
  }
  if (!(6.0 * delta < v_read)) {
    throw InvalidParams(fmt::format(
        "6 * delta ({} V) must be below v_read ({} V)", 6.0 * delta, v_read));
  }
  if (!(cbl > 0.0)) {
    throw InvalidParams("bitline capacitance must be > 0");
  }
}

double bitline_discharge(double i_sl, const VoltageSenseParams& params,
                         double t_sense, double v_read) {
  params.validate(v_read);
  if (!(t_sense >= 0.0)) {
    throw InvalidParams("sense time must be >= 0");
  }
  return std::min(std::max(i_sl, 0.0) * t_sense / params.cbl, v_read);
}

SenseOutcome sense_voltage(double i_sl, const VoltageSenseParams& params,
                           double t_sense, double v_read) {
  const double dv = bitline_discharge(i_sl, params, t_sense, v_read);
  SenseOutcome out;
  out.or_bit = dv > params.delta;
  out.b_bit = dv > 3.0 * params.delta;
  out.and_bit = dv > 5.0 * params.delta;
  return out;
}

double full_swing_sense_time(const AdraLevels& levels,
                             const VoltageSenseParams& params) {
  if (!(levels.i11 > 0.0)) {
    throw InvalidParams("(1,1) level current must be > 0");
  }
  return 6.0 * params.delta * params.cbl / levels.i11;
}

VoltageMargins check_voltage_margins(const AdraLevels& levels,
                                     const VoltageSenseParams& params,
                                     double t_sense, double v_read) {
  const auto l = levels.ascending();
  std::array<double, 4> dv{};
  for (std::size_t k = 0; k < l.size(); ++k) {
    dv[k] = bitline_discharge(l[k], params, t_sense, v_read);
  }
  const std::array<double, 3> thresholds = {params.delta, 3.0 * params.delta,
                                            5.0 * params.delta};
  VoltageMargins m{std::numeric_limits<double>::infinity(),
                   std::numeric_limits<double>::infinity()};
  for (std::size_t k = 0; k < l.size(); ++k) {
    // level k must sit above thresholds[0..k) and below thresholds[k..)
    for (std::size_t t = 0; t < thresholds.size(); ++t) {
      const bool above = dv[k] > thresholds[t];
      if (above != (t < k)) {
        throw InsufficientMargin(fmt::format(
            "level {} discharges {:.6g} V, on the wrong side of the {}*delta "
            "threshold",
            kLevelNames[k], dv[k], 2 * t + 1));
      }
      m.min_threshold_distance =
          std::min(m.min_threshold_distance, std::abs(dv[k] - thresholds[t]));
    }
    if (k > 0) {
      const double gap = dv[k] - dv[k - 1];
      if (gap < params.delta) {
        throw InsufficientMargin(fmt::format(
            "levels {} and {} discharge only {:.6g} V apart; need >= delta "
            "({:.6g} V)",
            kLevelNames[k - 1], kLevelNames[k], gap, params.delta));
      }
      m.min_level_gap = std::min(m.min_level_gap, gap);
    }
  }
  return m;
}

int required_discharge(ActivationMode mode) {
  switch (mode) {
    case ActivationMode::StandardRead:
      return 2;
    case ActivationMode::AdraCiM:
      return 6;
    case ActivationMode::SymmetricCiM:
      break;
  }
  throw InvalidParams("required discharge is defined for read and ADRA CiM only");
}

}  // namespace adra
