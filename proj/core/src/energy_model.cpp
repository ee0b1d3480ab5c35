#include "adra/energy_model.hpp"

#include <cmath>
#include <initializer_list>

#include <Eigen/Dense>
#include <fmt/format.h>

#include "adra/errors.hpp"
#include "adra/sensing.hpp"

namespace adra {
namespace {

bool is_voltage(SensingScheme s) noexcept { return s != SensingScheme::Current; }

void require_nonneg(std::initializer_list<std::pair<const char*, double>> fields,
                    const char* group) {
  for (const auto& [name, value] : fields) {
    if (!std::isfinite(value) || value < 0.0) {
      throw InvalidParams(
          fmt::format("{} field {} must be finite and >= 0, got {}", group, name, value));
    }
  }
}

void validate_setup(const SensingSetup& setup) {
  if (!is_voltage(setup.scheme)) return;
  if (!(setup.v_read > 0.0)) {
    throw InvalidParams("v_read must be > 0");
  }
  if (!(setup.delta > 0.0) ||
      !(required_discharge(ActivationMode::AdraCiM) * setup.delta < setup.v_read)) {
    throw InvalidParams(fmt::format(
        "delta ({} V) must be > 0 with 6 * delta below v_read ({} V)", setup.delta,
        setup.v_read));
  }
}

void check_inputs(const ArrayGeometry& geometry, const EnergyParams& params,
                  const SensingSetup& setup) {
  geometry.validate();
  params.validate();
  validate_setup(setup);
}

double cim_swing_fraction(const SensingSetup& setup) {
  return required_discharge(ActivationMode::AdraCiM) * setup.delta / setup.v_read;
}

double sense_amp_energy(const EnergyParams& p, SensingScheme s) {
  return is_voltage(s) ? p.e_vsense_per_sa : p.e_sense_per_sa;
}

double read_rbl(const ArrayGeometry& g, const EnergyParams& p,
                const SensingSetup& setup) {
  const auto rows = static_cast<double>(g.rows);
  switch (setup.scheme) {
    case SensingScheme::Current:
      return rows * p.e_rbl_per_row;
    case SensingScheme::Discharged:
      return rows * p.e_rbl_voltage_per_row;
    case SensingScheme::Precharged:
      return setup.read_swing_fraction() * rows * p.e_rbl_voltage_per_row;
  }
  return 0.0;
}

double cycle_time(const ArrayGeometry& g, SensingScheme scheme, int discharge,
                  const TimingParams& t) {
  const auto rows = static_cast<double>(g.rows);
  const auto cols = static_cast<double>(g.cols);
  double cycle = cols * t.t_wl_per_col + t.t_sense;
  switch (scheme) {
    case SensingScheme::Current:
      cycle += rows * t.t_settle_per_row;
      break;
    case SensingScheme::Discharged:
      cycle += rows * t.t_precharge_per_row;
      [[fallthrough]];
    case SensingScheme::Precharged:
      cycle += discharge * rows * t.t_delta_per_row;
      break;
  }
  return cycle;
}

}  // namespace

std::string_view to_string(SensingScheme s) noexcept {
  switch (s) {
    case SensingScheme::Current:
      return "current";
    case SensingScheme::Precharged:
      return "scheme1";
    case SensingScheme::Discharged:
      return "scheme2";
  }
  return "?";
}

std::optional<SensingScheme> parse_scheme(std::string_view name) noexcept {
  for (auto s : {SensingScheme::Current, SensingScheme::Precharged,
                 SensingScheme::Discharged}) {
    if (name == to_string(s)) return s;
  }
  return std::nullopt;
}

double SensingSetup::read_swing_fraction() const {
  return required_discharge(ActivationMode::StandardRead) * delta / v_read;
}

void EnergyParams::validate() const {
  require_nonneg({{"e_rbl_per_row", e_rbl_per_row},
                  {"e_rbl_voltage_per_row", e_rbl_voltage_per_row},
                  {"e_wl_per_col", e_wl_per_col},
                  {"e_current_flow", e_current_flow},
                  {"e_sense_per_sa", e_sense_per_sa},
                  {"e_vsense_per_sa", e_vsense_per_sa},
                  {"e_compute_base", e_compute_base},
                  {"e_compute_adra_extra", e_compute_adra_extra},
                  {"e_baseline_overhead", e_baseline_overhead},
                  {"p_leak_per_col", p_leak_per_col},
                  {"e_pseudo_cim_per_col", e_pseudo_cim_per_col}},
                 "energy");
  if (!calibrated()) {
    throw InvalidParams("energy parameters are uncalibrated (all bitline terms are 0)");
  }
}

bool TimingParams::calibrated() const noexcept {
  return t_wl_per_col + t_settle_per_row + t_delta_per_row + t_sense > 0.0;
}

void TimingParams::validate() const {
  require_nonneg({{"t_wl_per_col", t_wl_per_col},
                  {"t_settle_per_row", t_settle_per_row},
                  {"t_delta_per_row", t_delta_per_row},
                  {"t_precharge_per_row", t_precharge_per_row},
                  {"t_sense", t_sense},
                  {"t_compute", t_compute}},
                 "timing");
  if (!calibrated()) {
    throw InvalidParams("timing parameters are uncalibrated (all cycle terms are 0)");
  }
}

EnergyBreakdown EnergyBreakdown::of(double rbl, double current_flow_sensing,
                                    double wordline, double peripheral) {
  return {rbl, current_flow_sensing, wordline, peripheral,
          rbl + current_flow_sensing + wordline + peripheral};
}

EnergyBreakdown energy_read(const ArrayGeometry& geometry,
                            const EnergyParams& params,
                            const SensingSetup& setup) {
  check_inputs(geometry, params, setup);
  return EnergyBreakdown::of(
      read_rbl(geometry, params, setup),
      is_voltage(setup.scheme) ? 0.0 : params.e_current_flow,
      static_cast<double>(geometry.cols) * params.e_wl_per_col,
      kReadSenseAmps * sense_amp_energy(params, setup.scheme));
}

EnergyBreakdown energy_cim_adra(const ArrayGeometry& geometry,
                                const EnergyParams& params,
                                const SensingSetup& setup, double parallelism) {
  check_inputs(geometry, params, setup);
  if (!(parallelism > 0.0 && parallelism <= 1.0)) {
    throw InvalidParams(fmt::format("parallelism must be in (0, 1], got {}", parallelism));
  }
  double rbl = 0.0;
  if (setup.scheme == SensingScheme::Precharged) {
    // Unselected columns of the activated rows discharge too and must be
    // restored; their cost is charged to the active columns.
    rbl = cim_swing_fraction(setup) * static_cast<double>(geometry.rows) *
              params.e_rbl_voltage_per_row +
          (1.0 - parallelism) / parallelism * params.e_pseudo_cim_per_col;
  } else {
    rbl = read_rbl(geometry, params, setup);
  }
  return EnergyBreakdown::of(
      rbl, is_voltage(setup.scheme) ? 0.0 : 2.0 * params.e_current_flow,
      2.0 * static_cast<double>(geometry.cols) * params.e_wl_per_col,
      kAdraSenseAmps * sense_amp_energy(params, setup.scheme) +
          params.e_compute_base + params.e_compute_adra_extra);
}

EnergyBreakdown energy_baseline(const ArrayGeometry& geometry,
                                const EnergyParams& params,
                                const SensingSetup& setup) {
  const EnergyBreakdown r = energy_read(geometry, params, setup);
  return EnergyBreakdown::of(
      2.0 * r.rbl, 2.0 * r.current_flow_sensing, 2.0 * r.wordline,
      2.0 * r.peripheral + params.e_compute_base + params.e_baseline_overhead);
}

double latency(OpKind op, const ArrayGeometry& geometry, SensingScheme scheme,
               const TimingParams& timing) {
  geometry.validate();
  timing.validate();
  const int read_k = required_discharge(ActivationMode::StandardRead);
  const int cim_k = required_discharge(ActivationMode::AdraCiM);
  switch (op) {
    case OpKind::Read:
      return cycle_time(geometry, scheme, read_k, timing);
    case OpKind::AdraCim:
      return cycle_time(geometry, scheme, cim_k, timing) + timing.t_compute;
    case OpKind::Baseline:
      return 2.0 * cycle_time(geometry, scheme, read_k, timing) + timing.t_compute;
  }
  return 0.0;
}

ScenarioReport edp_report(const ArrayGeometry& geometry,
                          const SensingSetup& setup, const EnergyParams& params,
                          const TimingParams& timing, double parallelism) {
  ScenarioReport r;
  r.scheme = setup.scheme;
  r.geometry = geometry;
  r.parallelism = parallelism;
  r.breakdown_read = energy_read(geometry, params, setup);
  r.breakdown_cim = energy_cim_adra(geometry, params, setup, parallelism);
  r.breakdown_baseline = energy_baseline(geometry, params, setup);
  r.latency_cim = latency(OpKind::AdraCim, geometry, setup.scheme, timing);
  r.latency_baseline = latency(OpKind::Baseline, geometry, setup.scheme, timing);

  const double energy_ratio = r.breakdown_cim.total / r.breakdown_baseline.total;
  const double time_ratio = r.latency_cim / r.latency_baseline;
  r.speedup = 1.0 / time_ratio;
  r.energy_decrease_pct = 100.0 * (1.0 - energy_ratio);
  r.edp_decrease_pct = 100.0 * (1.0 - energy_ratio * time_ratio);
  return r;
}

std::vector<ScenarioReport> sweep(const std::vector<std::size_t>& sizes,
                                  const SensingSetup& setup,
                                  const EnergyParams& params,
                                  const TimingParams& timing,
                                  std::size_t word_width, double parallelism) {
  std::vector<ScenarioReport> out;
  out.reserve(sizes.size());
  for (std::size_t size : sizes) {
    out.push_back(
        edp_report(ArrayGeometry::square(size, word_width), setup, params,
                   timing, parallelism));
  }
  return out;
}

std::vector<std::string> trend_violations(
    const std::vector<ScenarioReport>& reports) {
  std::vector<std::string> out;
  for (const ScenarioReport& small : reports) {
    if (small.scheme == SensingScheme::Precharged) continue;
    for (const ScenarioReport& large : reports) {
      if (large.scheme != small.scheme || large.geometry.rows <= small.geometry.rows) {
        continue;
      }
      if (large.speedup < small.speedup) {
        out.push_back(fmt::format("{}: speedup falls from {:.6g} at {} to {:.6g} at {}",
                                  to_string(small.scheme), small.speedup,
                                  small.geometry.rows, large.speedup, large.geometry.rows));
      }
      if (large.energy_decrease_pct < small.energy_decrease_pct) {
        out.push_back(fmt::format(
            "{}: energy decrease falls from {:.6g}% at {} to {:.6g}% at {}",
            to_string(small.scheme), small.energy_decrease_pct, small.geometry.rows,
            large.energy_decrease_pct, large.geometry.rows));
      }
    }
  }
  return out;
}

double cim_energy_at_frequency(const ArrayGeometry& geometry,
                               const EnergyParams& params,
                               const SensingSetup& setup, double frequency_hz) {
  if (!(frequency_hz > 0.0) || !std::isfinite(frequency_hz)) {
    throw InvalidParams("operation frequency must be finite and > 0");
  }
  double e = energy_cim_adra(geometry, params, setup).total;
  if (setup.scheme == SensingScheme::Precharged) {
    e += params.p_leak_per_col / frequency_hz;
  }
  return e;
}

Crossover crossover_frequency(const EnergyParams& params,
                              const ArrayGeometry& geometry, double delta,
                              double v_read) {
  const double e1 =
      energy_cim_adra(geometry, params, {SensingScheme::Precharged, delta, v_read}).total;
  const double e2 =
      energy_cim_adra(geometry, params, {SensingScheme::Discharged, delta, v_read}).total;
  if (params.p_leak_per_col <= 0.0 || e2 <= e1) return {};
  return {true, params.p_leak_per_col / (e2 - e1)};
}

Crossover crossover_parallelism(const EnergyParams& params,
                                const ArrayGeometry& geometry, double delta,
                                double v_read) {
  const double e1 =
      energy_cim_adra(geometry, params, {SensingScheme::Precharged, delta, v_read}).total;
  const double e2 =
      energy_cim_adra(geometry, params, {SensingScheme::Discharged, delta, v_read}).total;
  const double ep = params.e_pseudo_cim_per_col;
  if (ep <= 0.0 || e2 <= e1) return {};
  // e1 + (1 - P) / P * ep = e2
  return {true, ep / (ep + e2 - e1)};
}

Calibration calibrate(const CalibrationTargets& t, double delta, double v_read) {
  const auto fail = [](const std::string& what) {
    throw InfeasibleTargets(what);
  };
  const auto fraction = [](double v) { return v > 0.0 && v < 1.0; };
  if (t.reference_size == 0 || t.small_size == 0 || t.small_size >= t.reference_size) {
    fail("calibration sizes must satisfy 0 < small_size < reference_size");
  }
  if (!fraction(t.read_rbl_fraction) || !fraction(t.cim_rbl_fraction) ||
      !fraction(t.current_energy_decrease) || !fraction(t.wordline_share) ||
      !fraction(t.current_flow_share) || t.baseline_overhead_share < 0.0 ||
      t.baseline_overhead_share > 1.0 || !fraction(t.crossover_parallelism) ||
      !fraction(t.scheme2_energy_decrease_small)) {
    fail("fractional calibration targets must lie in (0, 1)");
  }
  if (!(t.e_rbl_per_row > 0.0) || !(t.t_compute > 0.0) ||
      !(t.crossover_frequency_hz > 0.0) || !(t.cim_to_read_energy > 0.0) ||
      !(t.current_speedup > 1.0 && t.current_speedup < 2.0)) {
    fail("calibration scales must be > 0 and the current speedup in (1, 2)");
  }
  const SensingSetup voltage{SensingScheme::Precharged, delta, v_read};
  validate_setup(voltage);

  Calibration cal;
  EnergyParams& e = cal.energy;
  const double n_ref = static_cast<double>(t.reference_size);
  const double n_small = static_cast<double>(t.small_size);
  e.e_rbl_per_row = t.e_rbl_per_row;

  // Current sensing at the reference size, read and ADRA CiM.
  const double rbl = n_ref * e.e_rbl_per_row;
  const double read_total = rbl / t.read_rbl_fraction;
  const double non_rbl = read_total - rbl;
  e.e_wl_per_col = t.wordline_share * non_rbl / n_ref;
  const double rest = non_rbl - n_ref * e.e_wl_per_col;
  e.e_current_flow = t.current_flow_share * rest;
  e.e_sense_per_sa = rest - e.e_current_flow;

  const double cim_total = t.cim_to_read_energy * read_total;
  const double compute_total =
      cim_total - (rbl + 2.0 * n_ref * e.e_wl_per_col + 2.0 * e.e_current_flow +
                   kAdraSenseAmps * e.e_sense_per_sa);
  const double baseline_total = cim_total / (1.0 - t.current_energy_decrease);
  const double baseline_extra = baseline_total - 2.0 * read_total;
  if (compute_total < 0.0 || baseline_extra < 0.0) {
    fail(fmt::format(
        "current-sensing targets leave negative compute energy (cim {:.6g}, "
        "baseline {:.6g})",
        compute_total, baseline_extra));
  }
  e.e_compute_base = (1.0 - t.baseline_overhead_share) * baseline_extra;
  e.e_baseline_overhead = t.baseline_overhead_share * baseline_extra;
  e.e_compute_adra_extra = compute_total - e.e_compute_base;
  if (e.e_compute_adra_extra < 0.0) {
    fail(fmt::format("ADRA compute energy would be below the prior-art module ({:.6g})",
                     e.e_compute_adra_extra));
  }
  cal.cim_rbl_fraction_achieved = rbl / cim_total;
  cal.cim_rbl_fraction_residual =
      (cal.cim_rbl_fraction_achieved - t.cim_rbl_fraction) / t.cim_rbl_fraction;

  // Voltage modes: solve for the full-swing bitline charge and the voltage
  // sense-amplifier energy from one scheme-2 and one scheme-1 anchor.
  {
    const double x = voltage.read_swing_fraction();
    const double m = cim_swing_fraction(voltage) / x;
    const double w = e.e_wl_per_col;
    const double k_cim = compute_total;
    const double k_base = baseline_extra;
    const double r2 = 1.0 - t.scheme2_energy_decrease_small;
    const double r1 = 1.0 + t.scheme1_energy_overhead_large;
    Eigen::Matrix2d a;
    Eigen::Vector2d b;
    a << n_small * (1.0 - 2.0 * r2), kAdraSenseAmps - 2.0 * r2 * kReadSenseAmps,
        n_ref * x * (m - 2.0 * r1), kAdraSenseAmps - 2.0 * r1 * kReadSenseAmps;
    b << r2 * (2.0 * n_small * w + k_base) - 2.0 * n_small * w - k_cim,
        r1 * (2.0 * n_ref * w + k_base) - 2.0 * n_ref * w - k_cim;
    const Eigen::Vector2d sol = a.fullPivLu().solve(b);
    if (!(a * sol).isApprox(b, 1e-9) || !(sol(0) > 0.0) || sol(1) < 0.0) {
      fail(fmt::format(
          "voltage-sensing energy anchors give bitline {:.6g}, sense amp {:.6g}",
          sol(0), sol(1)));
    }
    e.e_rbl_voltage_per_row = sol(0);
    e.e_vsense_per_sa = sol(1);
  }

  // Timing in units of t_compute, array sizes in units of the reference.
  // Each voltage anchor s requires s * (T_cim + 1) = 2 * T_read + 1.
  TimingParams& tp = cal.timing;
  {
    const double rk = required_discharge(ActivationMode::StandardRead);
    const double ck = required_discharge(ActivationMode::AdraCiM);
    struct Anchor {
      double n;
      double speedup;
      double precharge;
    };
    const double ns = n_small / n_ref;
    const Anchor anchors[4] = {{ns, t.scheme1_speedup_small, 0.0},
                               {1.0, t.scheme1_speedup_large, 0.0},
                               {ns, t.scheme2_speedup_small, 1.0},
                               {1.0, t.scheme2_speedup_large, 1.0}};
    Eigen::Matrix4d a;
    Eigen::Vector4d b;
    for (int i = 0; i < 4; ++i) {
      const Anchor& an = anchors[i];
      const double s = an.speedup;
      // unknowns: wordline, delta discharge, sense, precharge
      a.row(i) << (s - 2.0) * an.n, (s * ck - 2.0 * rk) * an.n, s - 2.0,
          (s - 2.0) * an.n * an.precharge;
      b(i) = 1.0 - s;
    }
    const Eigen::Vector4d u = a.fullPivLu().solve(b);
    if (!(a * u).isApprox(b, 1e-9) || (u.array() < 0.0).any()) {
      fail(fmt::format(
          "voltage-sensing speedup anchors give negative timing terms "
          "(wl {:.6g}, delta {:.6g}, sense {:.6g}, precharge {:.6g})",
          u(0), u(1), u(2), u(3)));
    }
    // Current sensing: (2T + 1) / (T + 1) = speedup at the reference size.
    const double s = t.current_speedup;
    const double cycle = (s - 1.0) / (2.0 - s);
    const double settle = cycle - u(0) - u(2);
    if (settle < 0.0) {
      fail(fmt::format("current-sensing speedup needs a negative settle time ({:.6g})",
                       settle));
    }
    const double tc = t.t_compute;
    tp.t_wl_per_col = u(0) * tc / n_ref;
    tp.t_delta_per_row = u(1) * tc / n_ref;
    tp.t_sense = u(2) * tc;
    tp.t_precharge_per_row = u(3) * tc / n_ref;
    tp.t_settle_per_row = settle * tc / n_ref;
    tp.t_compute = tc;
  }

  // Scheme-1 hold leakage and pseudo-CiM restore energy, from the two
  // crossover points at the reference size.
  {
    const ArrayGeometry g = ArrayGeometry::square(t.reference_size, t.word_width);
    const double e1 = energy_cim_adra(g, e, voltage).total;
    const double e2 =
        energy_cim_adra(g, e, {SensingScheme::Discharged, delta, v_read}).total;
    if (!(e2 > e1)) {
      fail("scheme 2 must cost more than scheme 1 per operation at full parallelism");
    }
    e.p_leak_per_col = t.crossover_frequency_hz * (e2 - e1);
    e.e_pseudo_cim_per_col =
        t.crossover_parallelism / (1.0 - t.crossover_parallelism) * (e2 - e1);
  }
  return cal;
}

}  // namespace adra
