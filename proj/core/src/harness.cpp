#include "adra/harness.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

#include <fmt/format.h>

#include "adra/errors.hpp"
#include "adra/memory_array.hpp"

namespace adra {
namespace {

std::int64_t sign_extend(std::uint64_t raw, std::size_t width) {
  if (width < 64 && ((raw >> (width - 1)) & 1U)) raw |= ~std::uint64_t{0} << width;
  return static_cast<std::int64_t>(raw);
}

std::uint64_t low_bits(std::int64_t v, std::size_t width) {
  const auto raw = static_cast<std::uint64_t>(v);
  return width >= 64 ? raw : raw & ((std::uint64_t{1} << width) - 1);
}

Comparison compare_ints(std::int64_t a, std::int64_t b) {
  return a < b ? Comparison::Less : (a == b ? Comparison::Equal : Comparison::Greater);
}

// Per-column sensing according to the configured scheme.
class ColumnSensor {
 public:
  ColumnSensor(const SimConfig& config, const AdraLevels& levels,
               const ReferenceLadder& ladder)
      : scheme_(config.sensing.scheme),
        ladder_(ladder),
        voltage_(config.sensing.voltage),
        v_read_(config.bias.v_read) {
    if (scheme_ != SensingScheme::Current) {
      t_sense_ = full_swing_sense_time(levels, voltage_);
      check_voltage_margins(levels, voltage_, t_sense_, v_read_);
    }
  }

  SenseOutcome operator()(double i_sl) const {
    const SenseOutcome raw = scheme_ == SensingScheme::Current
                                 ? sense_current(i_sl, ladder_)
                                 : sense_voltage(i_sl, voltage_, t_sense_, v_read_);
    return with_recovered_a(raw);
  }

 private:
  SensingScheme scheme_;
  ReferenceLadder ladder_;
  VoltageSenseParams voltage_;
  double v_read_;
  double t_sense_ = 0.0;
};

// Smallest gap between adjacent level discharges at the full-swing sense
// time, in units of delta.
double discharge_gap_in_delta(const SimConfig& config, const AdraLevels& levels) {
  const VoltageSenseParams& vp = config.sensing.voltage;
  const double t = full_swing_sense_time(levels, vp);
  const auto l = levels.ascending();
  double gap = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k + 1 < l.size(); ++k) {
    gap = std::min(gap, bitline_discharge(l[k + 1], vp, t, config.bias.v_read) -
                            bitline_discharge(l[k], vp, t, config.bias.v_read));
  }
  return gap / vp.delta;
}

struct Pipeline {
  AdraLevels levels;
  ReferenceLadder ladder;
};

// Sense margin first: equal read biases collapse to the symmetric mapping and
// must surface as a margin failure, not as a bias-ordering error.
Pipeline prepare_pipeline(const SimConfig& config) {
  config.validate();
  Pipeline p;
  p.levels = adra_levels(config.device, config.bias);
  p.ladder = build_ladder(p.levels, config.sensing.current_margin);
  config.bias.validate();
  return p;
}

void record(VerifyReport& report, Mismatch m) {
  ++report.mismatch_count;
  if (report.mismatches.size() < VerifyReport::kMaxRecordedMismatches) {
    report.mismatches.push_back(std::move(m));
  }
}

template <typename Fn>
void with_case_context(std::size_t w, std::int64_t a, std::int64_t b, Fn&& fn) {
  try {
    fn();
  } catch (const UnreachableTriple& e) {
    throw UnreachableTriple(fmt::format("w={} A={} B={}: {}", w, a, b, e.what()));
  } catch (const InsufficientMargin& e) {
    throw InsufficientMargin(fmt::format("w={} A={} B={}: {}", w, a, b, e.what()));
  } catch (const InvalidParams& e) {
    throw InvalidParams(fmt::format("w={} A={} B={}: {}", w, a, b, e.what()));
  }
}

std::string bits_msb_first(const std::vector<bool>& bits) {
  std::string s;
  s.reserve(bits.size());
  for (auto it = bits.rbegin(); it != bits.rend(); ++it) s.push_back(*it ? '1' : '0');
  return s;
}

std::string bits_msb_first(std::uint64_t raw, std::size_t width) {
  std::vector<bool> bits(width);
  for (std::size_t i = 0; i < width; ++i) bits[i] = (raw >> i) & 1U;
  return bits_msb_first(bits);
}

std::string g6(double v) { return fmt::format("{:.6g}", v); }

}  // namespace

int exit_code_for(const std::exception& e) noexcept {
  if (dynamic_cast<const ConfigError*>(&e) != nullptr) return kExitConfig;
  if (dynamic_cast<const InsufficientMargin*>(&e) != nullptr) return kExitInvariant;
  if (dynamic_cast<const UnreachableTriple*>(&e) != nullptr) return kExitMismatch;
  if (dynamic_cast<const OutOfRange*>(&e) != nullptr) return kExitUsage;
  if (dynamic_cast<const InvalidParams*>(&e) != nullptr) return kExitConfig;
  if (dynamic_cast<const InfeasibleTargets*>(&e) != nullptr) return kExitConfig;
  return kExitInvariant;
}

std::string_view to_string(Operation op) noexcept {
  switch (op) {
    case Operation::Add:
      return "add";
    case Operation::Sub:
      return "sub";
    case Operation::Cmp:
      return "cmp";
  }
  return "?";
}

std::optional<Operation> parse_operation(std::string_view name) noexcept {
  for (auto op : {Operation::Add, Operation::Sub, Operation::Cmp}) {
    if (name == to_string(op)) return op;
  }
  return std::nullopt;
}

VerifyReport cmd_verify(const SimConfig& config, std::size_t max_width) {
  if (max_width == 0 || max_width > kMaxVerifyWidth) {
    throw OutOfRange(
        fmt::format("max width must be in [1, {}], got {}", kMaxVerifyWidth, max_width));
  }
  const Pipeline p = prepare_pipeline(config);
  const ColumnSensor sense(config, p.levels, p.ladder);

  VerifyReport report;
  report.levels = p.levels;
  report.ladder = p.ladder;
  report.margin = config.sensing.current_margin;
  report.min_level_gap = p.levels.min_gap();
  report.min_level_gap_delta = discharge_gap_in_delta(config, p.levels);

  for (std::size_t w = 1; w <= max_width; ++w) {
    report.widths.push_back(w);
    ArrayGeometry g;
    g.rows = 2;
    g.word_width = w;
    g.words_per_row = std::max<std::size_t>(1, config.geometry.cols / w);
    g.cols = g.words_per_row * w;
    g.mux_factor = 1;
    MemoryArray array(g);

    const std::uint64_t pairs = std::uint64_t{1} << (2 * w);
    const std::uint64_t mask = (std::uint64_t{1} << w) - 1;
    std::vector<SenseOutcome> triples(w);
    for (std::uint64_t start = 0; start < pairs; start += g.words_per_row) {
      const std::size_t batch =
          static_cast<std::size_t>(std::min<std::uint64_t>(g.words_per_row, pairs - start));
      for (std::size_t k = 0; k < batch; ++k) {
        array.write_value(0, k, (start + k) >> w);
        array.write_value(1, k, (start + k) & mask);
      }
      const std::vector<double> currents =
          array.column_current(config.device, config.bias, 0, 1, ActivationMode::AdraCiM);

      for (std::size_t k = 0; k < batch; ++k) {
        const std::uint64_t ua = (start + k) >> w;
        const std::uint64_t ub = (start + k) & mask;
        const std::int64_t a = sign_extend(ua, w);
        const std::int64_t b = sign_extend(ub, w);
        with_case_context(w, a, b, [&] {
          bool read_ok = true;
          for (std::size_t bit = 0; bit < w; ++bit) {
            triples[bit] = sense(currents[array.column_of(k, bit)]);
            read_ok = read_ok && *triples[bit].a_bit == bool((ua >> bit) & 1U) &&
                      triples[bit].b_bit == bool((ub >> bit) & 1U);
          }
          if (!read_ok) {
            record(report, {w, a, b, "read", "", "operand bits differ"});
          }
          const std::int64_t sum = word_op(triples, false).value();
          if (sum != a + b) {
            record(report, {w, a, b, "add", std::to_string(a + b), std::to_string(sum)});
          }
          const std::int64_t diff = word_op(triples, true).value();
          if (diff != a - b) {
            record(report, {w, a, b, "sub", std::to_string(a - b), std::to_string(diff)});
          }
          const Comparison c = compare(triples);
          if (c != compare_ints(a, b)) {
            record(report, {w, a, b, "cmp", std::string(to_string(compare_ints(a, b))),
                            std::string(to_string(c))});
          }
        });
        report.total_cases += 3;
      }
    }
    report.activations += array.activation_count();
  }
  return report;
}

std::string format_verify_report(const VerifyReport& r) {
  std::string out;
  out += fmt::format("widths: 1..{}\n", r.widths.empty() ? 0 : r.widths.back());
  out += fmt::format("cases: {} (add, sub, cmp)\n", r.total_cases);
  out += fmt::format("activations: {}\n", r.activations);
  out += fmt::format("mismatches: {}\n", r.mismatch_count);
  for (const Mismatch& m : r.mismatches) {
    out += fmt::format("  w={} A={} B={} {}: expected {} got {}\n", m.width, m.a, m.b,
                       m.op, m.expected, m.got);
  }
  out += fmt::format("min level gap: {:.3f} uA ({:.3f} delta), margin {:.3f} uA\n",
                     r.min_level_gap * 1e6, r.min_level_gap_delta, r.margin * 1e6);
  out += fmt::format("result: {}\n", r.passed() ? "PASS" : "FAIL");
  return out;
}

std::string ladder_diagnostics_csv(const VerifyReport& r) {
  std::string out = "name,current_uA\n";
  const auto row = [&](std::string_view name, double amps) {
    out += fmt::format("{},{:.3f}\n", name, amps * 1e6);
  };
  row("I00", r.levels.i00);
  row("I10", r.levels.i10);
  row("I01", r.levels.i01);
  row("I11", r.levels.i11);
  row("I_REF_OR", r.ladder.i_ref_or);
  row("I_REF_B", r.ladder.i_ref_b);
  row("I_REF_AND", r.ladder.i_ref_and);
  return out;
}

SimulateResult cmd_simulate(const SimConfig& config, Operation op, std::int64_t a,
                            std::int64_t b) {
  const Pipeline p = prepare_pipeline(config);
  const ArrayGeometry& g = config.geometry;
  const std::size_t w = g.word_width;
  if (w > 62) {
    throw OutOfRange(fmt::format("simulate supports word widths up to 62, got {}", w));
  }
  if (g.rows < 2) {
    throw InvalidParams("simulate needs an array with at least two rows");
  }
  const std::int64_t lo = -(std::int64_t{1} << (w - 1));
  const std::int64_t hi = (std::int64_t{1} << (w - 1)) - 1;
  for (std::int64_t v : {a, b}) {
    if (v < lo || v > hi) {
      throw OutOfRange(
          fmt::format("operand {} does not fit a signed {}-bit word [{}, {}]", v, w, lo, hi));
    }
  }

  MemoryArray array(g);
  array.write_value(0, 0, low_bits(a, w));
  array.write_value(1, 0, low_bits(b, w));
  const std::vector<double> currents =
      array.column_current(config.device, config.bias, 0, 1, ActivationMode::AdraCiM);
  const ColumnSensor sense(config, p.levels, p.ladder);

  SimulateResult r;
  r.op = op;
  r.a = a;
  r.b = b;
  std::uint64_t ra = 0;
  std::uint64_t rb = 0;
  for (std::size_t bit = 0; bit < w; ++bit) {
    r.triples.push_back(sense(currents[array.column_of(0, bit)]));
    if (*r.triples.back().a_bit) ra |= std::uint64_t{1} << bit;
    if (r.triples.back().b_bit) rb |= std::uint64_t{1} << bit;
  }
  r.recovered_a = sign_extend(ra, w);
  r.recovered_b = sign_extend(rb, w);
  r.word = word_op(r.triples, op != Operation::Add);
  if (op == Operation::Cmp) r.comparison = compare(r.triples);
  r.activations = array.activation_count();

  const ModelParams model = resolve_model(config);
  r.report = edp_report(g, config.sensing_setup(), model.energy, model.timing,
                        config.parallelism);
  return r;
}

std::string format_simulate_result(const SimulateResult& r) {
  const std::size_t w = r.triples.size();
  std::string out;
  out += fmt::format("operation: {} (word width {})\n", to_string(r.op), w);
  out += fmt::format("A = {} ({})  B = {} ({})\n", r.a, bits_msb_first(low_bits(r.a, w), w),
                     r.b, bits_msb_first(low_bits(r.b, w), w));
  out += "bit  or and  b  a\n";
  for (std::size_t i = 0; i < w; ++i) {
    const SenseOutcome& t = r.triples[i];
    out += fmt::format("{:>3}  {:>2} {:>3} {:>2} {:>2}\n", i, int(t.or_bit), int(t.and_bit),
                       int(t.b_bit), int(*t.a_bit));
  }
  out += fmt::format("recovered: A = {}, B = {}\n", r.recovered_a, r.recovered_b);
  out += fmt::format("result: {} = {}\n", bits_msb_first(r.word.sum_bits), r.word.value());
  out += fmt::format("flags: carry_out={} zero={} sign={}\n", int(r.word.carry_out),
                     int(r.word.zero_flag), int(r.word.sign_bit));
  if (r.comparison) {
    out += fmt::format("comparison: {}\n", to_string(*r.comparison));
  }
  out += fmt::format("activations: {}\n", r.activations);

  const ScenarioReport& s = r.report;
  out += fmt::format("scheme: {} ({}x{}, P={})\n", to_string(s.scheme), s.geometry.rows,
                     s.geometry.cols, g6(s.parallelism));
  out += fmt::format("latency: cim {} s, baseline {} s, speedup {}\n", g6(s.latency_cim),
                     g6(s.latency_baseline), g6(s.speedup));
  out += fmt::format("energy: cim {}, baseline {}, decrease {}%\n",
                     g6(s.breakdown_cim.total), g6(s.breakdown_baseline.total),
                     g6(s.energy_decrease_pct));
  out += fmt::format("edp decrease: {}%\n", g6(s.edp_decrease_pct));
  return out;
}

std::string sweep_csv(const std::vector<ScenarioReport>& reports) {
  std::string out = kSweepCsvHeader;
  out += '\n';
  for (const ScenarioReport& r : reports) {
    const EnergyBreakdown& e = r.breakdown_cim;
    out += fmt::format("{},{},{},{},{},{},{},{},{},{},{},{}\n", to_string(r.scheme),
                       r.geometry.rows, r.geometry.cols, r.geometry.word_width,
                       g6(r.parallelism), g6(r.speedup), g6(r.energy_decrease_pct),
                       g6(r.edp_decrease_pct), g6(e.rbl), g6(e.wordline),
                       g6(e.current_flow_sensing), g6(e.peripheral));
  }
  return out;
}

SweepResult cmd_sweep(const SimConfig& config, const std::vector<std::size_t>& sizes,
                      const std::vector<SensingScheme>& schemes) {
  config.validate();
  const ModelParams model = resolve_model(config);
  SweepResult r;
  for (SensingScheme scheme : schemes) {
    SensingSetup setup = config.sensing_setup();
    setup.scheme = scheme;
    const auto part = sweep(sizes, setup, model.energy, model.timing,
                            config.geometry.word_width, config.parallelism);
    r.reports.insert(r.reports.end(), part.begin(), part.end());
  }
  r.violations = trend_violations(r.reports);
  r.csv = sweep_csv(r.reports);
  return r;
}

CrossoverReport cmd_crossover(const SimConfig& config) {
  config.validate();
  const ModelParams model = resolve_model(config);
  const ArrayGeometry& g = config.geometry;
  const double delta = config.sensing.voltage.delta;
  const double v_read = config.bias.v_read;
  const SensingSetup s1{SensingScheme::Precharged, delta, v_read};
  const SensingSetup s2{SensingScheme::Discharged, delta, v_read};

  CrossoverReport r;
  r.frequency = crossover_frequency(model.energy, g, delta, v_read);
  r.parallelism = crossover_parallelism(model.energy, g, delta, v_read);

  const auto status = [](const Crossover& c) { return c.found ? "found" : "no-crossover"; };
  std::string& out = r.csv;
  out += fmt::format("# f_star_hz,{},{}\n", r.frequency.found ? g6(r.frequency.value) : "",
                     status(r.frequency));
  out += fmt::format("# p_star,{},{}\n", r.parallelism.found ? g6(r.parallelism.value) : "",
                     status(r.parallelism));
  out += "curve,x,scheme1,scheme2\n";

  // Two decades either side of f*.
  const double f_center = r.frequency.found ? r.frequency.value : 1e6;
  for (int i = -20; i <= 20; ++i) {
    const double f = f_center * std::pow(10.0, i / 10.0);
    out += fmt::format("frequency,{},{},{}\n", g6(f),
                       g6(cim_energy_at_frequency(g, model.energy, s1, f)),
                       g6(cim_energy_at_frequency(g, model.energy, s2, f)));
  }
  const double p_center = r.parallelism.found ? r.parallelism.value : 0.5;
  std::vector<double> ps;
  for (int i = 1; i <= 20; ++i) ps.push_back(p_center * i / 21.0);
  ps.push_back(p_center);
  for (int i = 1; i <= 20; ++i) ps.push_back(p_center + (1.0 - p_center) * i / 20.0);
  for (double p : ps) {
    out += fmt::format("parallelism,{},{},{}\n", g6(p),
                       g6(energy_cim_adra(g, model.energy, s1, p).total),
                       g6(energy_cim_adra(g, model.energy, s2, p).total));
  }
  return r;
}

}  // namespace adra
