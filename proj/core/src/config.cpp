#include "adra/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <utility>
#include <vector>

#include <fmt/format.h>
#include <yaml-cpp/yaml.h>

#include "adra/errors.hpp"

namespace adra {
namespace {

constexpr const char* kCalibrate = "calibrate";

int line_of(const YAML::Node& node) {
  const YAML::Mark m = node.Mark();
  return m.line >= 0 ? m.line + 1 : 0;
}

struct DoubleField {
  const char* key;
  double* value;
};

struct SizeField {
  const char* key;
  std::size_t* value;
};

void require_map(const YAML::Node& node, std::string_view section) {
  if (!node.IsMap()) {
    throw ConfigError(fmt::format("'{}' must be a mapping", section), line_of(node));
  }
}

double as_double(const YAML::Node& node, std::string_view name) {
  try {
    const double v = node.as<double>();
    if (!std::isfinite(v)) throw YAML::Exception(node.Mark(), "not finite");
    return v;
  } catch (const YAML::Exception&) {
    throw ConfigError(fmt::format("{} must be a finite number", name), line_of(node));
  }
}

std::size_t as_size(const YAML::Node& node, std::string_view name) {
  try {
    const long long v = node.as<long long>();
    if (v < 0) throw YAML::Exception(node.Mark(), "negative");
    return static_cast<std::size_t>(v);
  } catch (const YAML::Exception&) {
    throw ConfigError(fmt::format("{} must be a non-negative integer", name),
                      line_of(node));
  }
}

// Reads every key of a mapping section into the matching field; anything
// not listed is an error.
void read_section(const YAML::Node& node, std::string_view section,
                  const std::vector<DoubleField>& doubles,
                  const std::vector<SizeField>& sizes = {},
                  std::vector<std::string>* seen = nullptr) {
  require_map(node, section);
  for (const auto& kv : node) {
    const auto key = kv.first.as<std::string>();
    const std::string name = fmt::format("{}.{}", section, key);
    bool known = false;
    for (const auto& f : doubles) {
      if (key == f.key) {
        *f.value = as_double(kv.second, name);
        known = true;
      }
    }
    for (const auto& f : sizes) {
      if (key == f.key) {
        *f.value = as_size(kv.second, name);
        known = true;
      }
    }
    if (!known) {
      throw ConfigError(fmt::format("unknown key '{}'", name), line_of(kv.first));
    }
    if (seen != nullptr) seen->push_back(key);
  }
}

std::vector<DoubleField> device_fields(DeviceParams& d) {
  return {{"vt_lrs", &d.vt_lrs},
          {"vt_hrs", &d.vt_hrs},
          {"transconductance_k", &d.transconductance_k},
          {"leakage_floor", &d.leakage_floor}};
}

std::vector<DoubleField> bias_fields(BiasPlan& b) {
  return {{"v_read", &b.v_read},
          {"v_gread1", &b.v_gread1},
          {"v_gread2", &b.v_gread2},
          {"v_set", &b.v_set},
          {"v_reset", &b.v_reset}};
}

std::vector<SizeField> geometry_fields(ArrayGeometry& g) {
  return {{"rows", &g.rows},
          {"cols", &g.cols},
          {"word_width", &g.word_width},
          {"words_per_row", &g.words_per_row},
          {"mux_factor", &g.mux_factor}};
}

std::vector<DoubleField> energy_fields(EnergyParams& e) {
  return {{"e_rbl_per_row", &e.e_rbl_per_row},
          {"e_rbl_voltage_per_row", &e.e_rbl_voltage_per_row},
          {"e_wl_per_col", &e.e_wl_per_col},
          {"e_current_flow", &e.e_current_flow},
          {"e_sense_per_sa", &e.e_sense_per_sa},
          {"e_vsense_per_sa", &e.e_vsense_per_sa},
          {"e_compute_base", &e.e_compute_base},
          {"e_compute_adra_extra", &e.e_compute_adra_extra},
          {"e_baseline_overhead", &e.e_baseline_overhead},
          {"p_leak_per_col", &e.p_leak_per_col},
          {"e_pseudo_cim_per_col", &e.e_pseudo_cim_per_col}};
}

std::vector<DoubleField> timing_fields(TimingParams& t) {
  return {{"t_wl_per_col", &t.t_wl_per_col},
          {"t_settle_per_row", &t.t_settle_per_row},
          {"t_delta_per_row", &t.t_delta_per_row},
          {"t_precharge_per_row", &t.t_precharge_per_row},
          {"t_sense", &t.t_sense},
          {"t_compute", &t.t_compute}};
}

template <typename Params, typename Fields>
std::optional<Params> read_model_section(const YAML::Node& node,
                                         std::string_view section, Fields fields) {
  if (node.IsScalar()) {
    if (node.as<std::string>() == kCalibrate) return std::nullopt;
    throw ConfigError(
        fmt::format("'{}' must be '{}' or a mapping of coefficients", section, kCalibrate),
        line_of(node));
  }
  Params p;
  read_section(node, section, fields(p));
  return p;
}

void read_sensing(const YAML::Node& node, SensingConfig& s) {
  require_map(node, "sensing");
  for (const auto& kv : node) {
    const auto key = kv.first.as<std::string>();
    const std::string name = "sensing." + key;
    if (key == "scheme") {
      const auto label = kv.second.as<std::string>();
      const auto scheme = parse_scheme(label);
      if (!scheme) {
        throw ConfigError(
            fmt::format("{} '{}' is not one of current, scheme1, scheme2", name, label),
            line_of(kv.second));
      }
      s.scheme = *scheme;
    } else if (key == "current_margin") {
      s.current_margin = as_double(kv.second, name);
    } else if (key == "delta") {
      s.voltage.delta = as_double(kv.second, name);
    } else if (key == "cbl") {
      s.voltage.cbl = as_double(kv.second, name);
    } else {
      throw ConfigError(fmt::format("unknown key '{}'", name), line_of(kv.first));
    }
  }
}

SimConfig from_yaml(const YAML::Node& root) {
  SimConfig c;
  if (!root.IsDefined() || root.IsNull()) return c;
  require_map(root, "document");

  bool words_per_row_given = false;
  for (const auto& kv : root) {
    const auto key = kv.first.as<std::string>();
    const YAML::Node& v = kv.second;
    if (key == "device") {
      read_section(v, key, device_fields(c.device));
    } else if (key == "bias") {
      read_section(v, key, bias_fields(c.bias));
    } else if (key == "geometry") {
      std::vector<std::string> seen;
      read_section(v, key, {}, geometry_fields(c.geometry), &seen);
      for (const auto& s : seen) words_per_row_given |= s == "words_per_row";
    } else if (key == "sensing") {
      read_sensing(v, c.sensing);
    } else if (key == "energy") {
      c.energy = read_model_section<EnergyParams>(v, key, energy_fields);
    } else if (key == "timing") {
      c.timing = read_model_section<TimingParams>(v, key, timing_fields);
    } else if (key == "parallelism") {
      c.parallelism = as_double(v, key);
    } else if (key == "output") {
      c.output = v.IsNull() ? std::string() : v.as<std::string>();
    } else {
      throw ConfigError(fmt::format("unknown key '{}'", key), line_of(kv.first));
    }
  }
  if (!words_per_row_given && c.geometry.word_width > 0 && c.geometry.mux_factor > 0) {
    c.geometry.words_per_row =
        c.geometry.cols / c.geometry.mux_factor / c.geometry.word_width;
  }
  return c;
}

template <typename Fn>
void as_config_error(std::string_view section, Fn&& fn) {
  try {
    fn();
  } catch (const InvalidParams& e) {
    throw ConfigError(fmt::format("{}: {}", section, e.what()));
  }
}

std::string number(double v) { return fmt::format("{}", v); }

void emit_doubles(YAML::Emitter& out, const char* section,
                  const std::vector<DoubleField>& fields) {
  out << YAML::Key << section << YAML::Value << YAML::BeginMap;
  for (const auto& f : fields) out << YAML::Key << f.key << YAML::Value << number(*f.value);
  out << YAML::EndMap;
}

}  // namespace

void SimConfig::validate() const {
  as_config_error("device", [&] { device.validate(); });
  as_config_error("bias", [&] {
    // Equal read biases are the degenerate symmetric activation; they load
    // and are rejected later by the sense-margin check.
    if (bias.v_gread1 == bias.v_gread2) {
      BiasPlan probe = bias;
      probe.v_gread1 = 0.5 * bias.v_gread2;
      probe.validate();
    } else {
      bias.validate();
    }
  });
  as_config_error("geometry", [&] { geometry.validate(); });
  as_config_error("sensing", [&] {
    if (!(sensing.current_margin > 0.0)) {
      throw InvalidParams("current_margin must be > 0");
    }
    sensing.voltage.validate(bias.v_read);
  });
  if (energy) as_config_error("energy", [&] { energy->validate(); });
  if (timing) as_config_error("timing", [&] { timing->validate(); });
  if (!(parallelism > 0.0 && parallelism <= 1.0)) {
    throw ConfigError(fmt::format("parallelism must be in (0, 1], got {}", parallelism));
  }
}

SimConfig parse_config(std::string_view text) {
  YAML::Node root;
  try {
    root = YAML::Load(std::string(text));
  } catch (const YAML::Exception& e) {
    throw ConfigError(e.msg, e.mark.line >= 0 ? e.mark.line + 1 : 0);
  }
  SimConfig c = from_yaml(root);
  c.validate();
  return c;
}

SimConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw ConfigError(fmt::format("cannot open config file '{}'", path.string()));
  }
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config(text.str());
}

std::string dump_config(const SimConfig& config) {
  SimConfig c = config;
  YAML::Emitter out;
  out << YAML::BeginMap;
  emit_doubles(out, "device", device_fields(c.device));
  emit_doubles(out, "bias", bias_fields(c.bias));

  out << YAML::Key << "geometry" << YAML::Value << YAML::BeginMap;
  for (const auto& f : geometry_fields(c.geometry)) {
    out << YAML::Key << f.key << YAML::Value << *f.value;
  }
  out << YAML::EndMap;

  out << YAML::Key << "sensing" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "scheme" << YAML::Value << std::string(to_string(c.sensing.scheme));
  out << YAML::Key << "current_margin" << YAML::Value << number(c.sensing.current_margin);
  out << YAML::Key << "delta" << YAML::Value << number(c.sensing.voltage.delta);
  out << YAML::Key << "cbl" << YAML::Value << number(c.sensing.voltage.cbl);
  out << YAML::EndMap;

  if (c.energy) {
    emit_doubles(out, "energy", energy_fields(*c.energy));
  } else {
    out << YAML::Key << "energy" << YAML::Value << kCalibrate;
  }
  if (c.timing) {
    emit_doubles(out, "timing", timing_fields(*c.timing));
  } else {
    out << YAML::Key << "timing" << YAML::Value << kCalibrate;
  }
  out << YAML::Key << "parallelism" << YAML::Value << number(c.parallelism);
  out << YAML::Key << "output" << YAML::Value << c.output;
  out << YAML::EndMap;
  return std::string(out.c_str()) + "\n";
}

ModelParams resolve_model(const SimConfig& config) {
  ModelParams m;
  if (!config.energy || !config.timing) {
    m.calibration =
        calibrate(CalibrationTargets{}, config.sensing.voltage.delta, config.bias.v_read);
    m.energy = m.calibration->energy;
    m.timing = m.calibration->timing;
  }
  if (config.energy) m.energy = *config.energy;
  if (config.timing) m.timing = *config.timing;
  return m;
}

}  // namespace adra
