#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include "adra/device_model.hpp"
#include "adra/energy_model.hpp"
#include "adra/memory_array.hpp"
#include "adra/sensing.hpp"

namespace adra {

struct SensingConfig {
  SensingScheme scheme = SensingScheme::Current;
  double current_margin = 1e-6;  // amperes, each side of a reference
  VoltageSenseParams voltage;

  friend bool operator==(const SensingConfig&, const SensingConfig&) = default;
};

// Everything a command needs. energy/timing left empty mean "calibrate".
struct SimConfig {
  DeviceParams device;
  BiasPlan bias;
  ArrayGeometry geometry;
  SensingConfig sensing;
  std::optional<EnergyParams> energy;
  std::optional<TimingParams> timing;
  double parallelism = 1.0;
  std::string output;  // CSV destination; empty writes to stdout

  // Throws ConfigError naming the offending field.
  void validate() const;

  SensingSetup sensing_setup() const {
    return {sensing.scheme, sensing.voltage.delta, bias.v_read};
  }

  friend bool operator==(const SimConfig&, const SimConfig&) = default;
};

// YAML document; every key is optional, unknown keys are rejected with their
// line number. An empty document yields the defaults.
SimConfig parse_config(std::string_view text);
SimConfig load_config(const std::filesystem::path& path);

// Fully populated, normalized document accepted by parse_config.
std::string dump_config(const SimConfig& config);

struct ModelParams {
  EnergyParams energy;
  TimingParams timing;
  std::optional<Calibration> calibration;  // set when anything was calibrated
};

// Explicit parameters where given, calibrated ones otherwise.
ModelParams resolve_model(const SimConfig& config);

}  // namespace adra
