#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

#include "adra/config.hpp"
#include "adra/errors.hpp"

namespace adra {
namespace {

int error_line(const std::string& text) {
  try {
    parse_config(text);
  } catch (const ConfigError& e) {
    return e.line();
  }
  return -1;
}

TEST(Config, EmptyDocumentIsDefaults) {
  const SimConfig c = parse_config("");
  EXPECT_EQ(c, SimConfig{});
  EXPECT_EQ(c.geometry.rows, 1024u);
  EXPECT_EQ(c.geometry.cols, 1024u);
  EXPECT_EQ(c.geometry.word_width, 32u);
  EXPECT_EQ(c.sensing.scheme, SensingScheme::Current);
  EXPECT_FALSE(c.energy.has_value());
}

TEST(Config, PartialSectionsKeepDefaults) {
  const SimConfig c = parse_config(
      "geometry:\n  rows: 256\n  cols: 256\n"
      "sensing:\n  scheme: scheme2\n");
  EXPECT_EQ(c.geometry.words_per_row, 8u);
  EXPECT_EQ(c.sensing.scheme, SensingScheme::Discharged);
  EXPECT_EQ(c.bias, BiasPlan{});
}

TEST(Config, UnknownKeysRejectedWithLine) {
  EXPECT_EQ(error_line("bias:\n  v_read: 1.0\n  v_gread3: 0.9\n"), 3);
  EXPECT_EQ(error_line("geometry:\n  rows: 16\nfrobnicate: 1\n"), 3);
  EXPECT_EQ(error_line("sensing:\n  scheme: scheme9\n"), 2);
}

TEST(Config, ParseErrorsCarryLine) {
  EXPECT_EQ(error_line("bias:\n  v_read: [1.0\n"), 3);
  EXPECT_GT(error_line("bias:\n  v_read: fast\n"), 0);
}

TEST(Config, BiasOrderingViolationNamesField) {
  try {
    parse_config("bias:\n  v_gread1: 1.2\n  v_gread2: 1.0\n");
    FAIL() << "expected ConfigError";
  } catch (const ConfigError& e) {
    EXPECT_NE(std::string(e.what()).find("v_gread2 > v_gread1"), std::string::npos);
  }
}

TEST(Config, EqualReadBiasesLoad) {
  const SimConfig c = parse_config("bias:\n  v_gread1: 1.0\n  v_gread2: 1.0\n");
  EXPECT_DOUBLE_EQ(c.bias.v_gread1, 1.0);
}

TEST(Config, InvariantViolations) {
  EXPECT_THROW(parse_config("parallelism: 0\n"), ConfigError);
  EXPECT_THROW(parse_config("geometry:\n  cols: 100\n  words_per_row: 4\n"), ConfigError);
  EXPECT_THROW(parse_config("sensing:\n  delta: 0.5\n"), ConfigError);
  EXPECT_THROW(parse_config("energy: fixed\n"), ConfigError);
  EXPECT_THROW(parse_config("device:\n  vt_hrs: -1\n"), ConfigError);
}

TEST(Config, RoundTripIsNormalized) {
  const std::string text =
      "sensing:\n  scheme: scheme1\n  delta: 0.02\n"
      "geometry:\n  rows: 512\n  cols: 512\n  word_width: 16\n"
      "parallelism: 0.5\n";
  const SimConfig c = parse_config(text);
  const std::string dumped = dump_config(c);
  EXPECT_EQ(parse_config(dumped), c);
  EXPECT_EQ(dump_config(parse_config(dumped)), dumped);
}

TEST(Config, ExplicitModelSectionsRoundTrip) {
  SimConfig c;
  c.energy = calibrate(CalibrationTargets{}, 0.025, 1.0).energy;
  c.timing = calibrate(CalibrationTargets{}, 0.025, 1.0).timing;
  c.output = "out.csv";
  const SimConfig back = parse_config(dump_config(c));
  EXPECT_EQ(back, c);
}

TEST(Config, ResolveModelCalibratesByDefault) {
  const ModelParams m = resolve_model(SimConfig{});
  ASSERT_TRUE(m.calibration.has_value());
  EXPECT_DOUBLE_EQ(m.energy.e_rbl_per_row, 1.0);
}

TEST(Config, ExplicitEnergyUsedVerbatim) {
  const SimConfig c = parse_config(
      "energy:\n  e_rbl_per_row: 2\n  e_wl_per_col: 0.1\n"
      "timing:\n  t_wl_per_col: 1e-12\n  t_settle_per_row: 1e-12\n  t_sense: 1e-9\n"
      "  t_compute: 1e-9\n");
  const ModelParams m = resolve_model(c);
  EXPECT_FALSE(m.calibration.has_value());
  EXPECT_DOUBLE_EQ(m.energy.e_rbl_per_row, 2.0);
  EXPECT_DOUBLE_EQ(m.timing.t_sense, 1e-9);
}

TEST(Config, LoadFromFile) {
  const auto path = std::filesystem::temp_directory_path() / "adra_config_test.yaml";
  {
    std::ofstream out(path);
    out << "geometry:\n  word_width: 8\n";
  }
  EXPECT_EQ(load_config(path).geometry.words_per_row, 128u);
  std::filesystem::remove(path);
  EXPECT_THROW(load_config(path), ConfigError);
}

TEST(Config, ShippedExampleIsDefaults) {
  EXPECT_EQ(load_config(ADRA_DEFAULT_CONFIG), SimConfig{});
}

}  // namespace
}  // namespace adra
