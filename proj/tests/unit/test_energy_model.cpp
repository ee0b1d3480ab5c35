#include <gtest/gtest.h>

#include <cmath>

#include "adra/energy_model.hpp"
#include "adra/errors.hpp"

namespace adra {
namespace {

constexpr double kDelta = 0.025;
constexpr double kVread = 1.0;

class Calibrated : public ::testing::Test {
 protected:
  static void SetUpTestSuite() { cal_ = calibrate(CalibrationTargets{}, kDelta, kVread); }

  static SensingSetup setup(SensingScheme s) { return {s, kDelta, kVread}; }
  static ScenarioReport report(SensingScheme s, std::size_t n, double p = 1.0) {
    return edp_report(ArrayGeometry::square(n), setup(s), cal_.energy, cal_.timing, p);
  }

  static inline Calibration cal_;
  const ArrayGeometry big_ = ArrayGeometry::square(1024);
};

TEST_F(Calibrated, ReadBitlineFraction) {
  const EnergyBreakdown r = energy_read(big_, cal_.energy, setup(SensingScheme::Current));
  EXPECT_DOUBLE_EQ(cal_.energy.e_rbl_per_row, 1.0);
  EXPECT_NEAR(r.rbl / r.total, 0.91, 1e-12);
}

TEST_F(Calibrated, NonBitlineSplit) {
  const EnergyBreakdown r = energy_read(big_, cal_.energy, setup(SensingScheme::Current));
  const double non_rbl = r.total - r.rbl;
  EXPECT_NEAR(r.wordline / non_rbl, 0.6, 1e-12);
  EXPECT_NEAR(r.current_flow_sensing / (non_rbl - r.wordline), 0.3, 1e-12);
}

TEST_F(Calibrated, CimToReadRatio) {
  const auto s = setup(SensingScheme::Current);
  EXPECT_NEAR(energy_cim_adra(big_, cal_.energy, s).total /
                  energy_read(big_, cal_.energy, s).total,
              1.24, 1e-12);
}

TEST_F(Calibrated, BaselineComputeInReadEquivalents) {
  // 1 - 1.24 / (2 + x) = 0.4118
  const double x = 1.24 / (1.0 - 0.4118) - 2.0;
  const auto s = setup(SensingScheme::Current);
  const double read = energy_read(big_, cal_.energy, s).total;
  const double base = energy_baseline(big_, cal_.energy, s).total;
  EXPECT_NEAR((base - 2.0 * read) / read, x, 1e-12);
  EXPECT_NEAR(x, 0.108, 5e-4);
}

TEST_F(Calibrated, CimBitlineFractionResidualUnderOnePercent) {
  // Over-determined: 0.91 / 1.24 instead of 0.74.
  EXPECT_NEAR(cal_.cim_rbl_fraction_achieved, 0.91 / 1.24, 1e-12);
  EXPECT_LT(std::abs(cal_.cim_rbl_fraction_residual), 0.01);
}

TEST_F(Calibrated, CurrentSensingReferencePoint) {
  const ScenarioReport r = report(SensingScheme::Current, 1024);
  EXPECT_NEAR(r.speedup, 1.94, 1e-9);
  EXPECT_NEAR(r.energy_decrease_pct, 41.18, 1e-9);
  EXPECT_NEAR(r.edp_decrease_pct, 100.0 * (1.0 - 0.5882 / 1.94), 1e-9);
}

TEST_F(Calibrated, VoltageAnchorsReproduced) {
  EXPECT_NEAR(report(SensingScheme::Discharged, 256).energy_decrease_pct, 36.5, 1e-9);
  EXPECT_NEAR(report(SensingScheme::Precharged, 1024).energy_decrease_pct, -22.7, 1e-9);
  EXPECT_NEAR(report(SensingScheme::Precharged, 256).speedup, 1.59, 1e-9);
  EXPECT_NEAR(report(SensingScheme::Precharged, 1024).speedup, 1.68, 1e-9);
  EXPECT_NEAR(report(SensingScheme::Discharged, 256).speedup, 1.95, 1e-9);
  EXPECT_NEAR(report(SensingScheme::Discharged, 1024).speedup, 1.975, 1e-9);
}

TEST_F(Calibrated, SchemeOneBitlineRatioIsThree) {
  for (std::size_t n : {256u, 512u, 1024u}) {
    const auto g = ArrayGeometry::square(n);
    const auto s = setup(SensingScheme::Precharged);
    EXPECT_NEAR(energy_cim_adra(g, cal_.energy, s).rbl / energy_read(g, cal_.energy, s).rbl,
                3.0, 1e-12);
  }
}

TEST_F(Calibrated, BreakdownsSumToTotal) {
  for (auto scheme :
       {SensingScheme::Current, SensingScheme::Precharged, SensingScheme::Discharged}) {
    const ScenarioReport r = report(scheme, 512, 0.5);
    for (const EnergyBreakdown& e : {r.breakdown_read, r.breakdown_cim, r.breakdown_baseline}) {
      EXPECT_NEAR(e.total, e.rbl + e.current_flow_sensing + e.wordline + e.peripheral,
                  1e-9 * e.total);
      EXPECT_TRUE(std::isfinite(e.total));
      EXPECT_GT(e.total, 0.0);
    }
  }
}

TEST_F(Calibrated, VoltageModesHaveNoStaticCurrent) {
  const auto e = energy_cim_adra(big_, cal_.energy, setup(SensingScheme::Discharged));
  EXPECT_EQ(e.current_flow_sensing, 0.0);
}

TEST_F(Calibrated, EdpIdentity) {
  for (auto scheme :
       {SensingScheme::Current, SensingScheme::Precharged, SensingScheme::Discharged}) {
    for (std::size_t n : {64u, 256u, 1024u, 4096u}) {
      const ScenarioReport r = report(scheme, n);
      const double identity =
          100.0 * (1.0 - (1.0 - r.energy_decrease_pct / 100.0) / r.speedup);
      EXPECT_NEAR(r.edp_decrease_pct, identity, 1e-12);
    }
  }
}

TEST_F(Calibrated, LatencyComposition) {
  for (auto scheme :
       {SensingScheme::Current, SensingScheme::Precharged, SensingScheme::Discharged}) {
    const double read = latency(OpKind::Read, big_, scheme, cal_.timing);
    EXPECT_NEAR(latency(OpKind::Baseline, big_, scheme, cal_.timing),
                2.0 * read + cal_.timing.t_compute, 1e-21);
    EXPECT_GE(latency(OpKind::AdraCim, big_, scheme, cal_.timing), read);
  }
}

TEST_F(Calibrated, TrendsHoldOnFineSweep) {
  std::vector<std::size_t> sizes;
  for (std::size_t n = 64; n <= 4096; n += 64) sizes.push_back(n);
  for (auto scheme : {SensingScheme::Current, SensingScheme::Discharged}) {
    const auto reports = sweep(sizes, setup(scheme), cal_.energy, cal_.timing);
    EXPECT_TRUE(trend_violations(reports).empty()) << to_string(scheme);
  }
}

TEST_F(Calibrated, TrendViolationDetected) {
  const auto reports = sweep({1024, 256}, setup(SensingScheme::Current), cal_.energy,
                             cal_.timing);
  EXPECT_TRUE(trend_violations(reports).empty());
  auto reversed = reports;
  std::swap(reversed[0].speedup, reversed[1].speedup);
  EXPECT_EQ(trend_violations(reversed).size(), 1u);
  auto s1 = sweep({256, 1024}, setup(SensingScheme::Precharged), cal_.energy, cal_.timing);
  EXPECT_TRUE(trend_violations(s1).empty());  // scheme 1 is exempt
}

TEST_F(Calibrated, FrequencyCrossover) {
  const Crossover f = crossover_frequency(cal_.energy, big_, kDelta, kVread);
  ASSERT_TRUE(f.found);
  EXPECT_NEAR(f.value, 7.53e6, 1e-3);
  const auto s1 = setup(SensingScheme::Precharged);
  const auto s2 = setup(SensingScheme::Discharged);
  const auto diff = [&](double hz) {
    return cim_energy_at_frequency(big_, cal_.energy, s2, hz) -
           cim_energy_at_frequency(big_, cal_.energy, s1, hz);
  };
  EXPECT_LT(diff(f.value / 2.0), 0.0);
  EXPECT_GT(diff(2.0 * f.value), 0.0);
  EXPECT_NEAR(diff(f.value), 0.0, 1e-9);
}

TEST_F(Calibrated, ParallelismCrossover) {
  const Crossover p = crossover_parallelism(cal_.energy, big_, kDelta, kVread);
  ASSERT_TRUE(p.found);
  EXPECT_NEAR(p.value, 0.42, 1e-12);
  const auto diff = [&](double par) {
    return energy_cim_adra(big_, cal_.energy, setup(SensingScheme::Discharged), par).total -
           energy_cim_adra(big_, cal_.energy, setup(SensingScheme::Precharged), par).total;
  };
  EXPECT_LT(diff(p.value / 2.0), 0.0);
  EXPECT_GT(diff(0.5 * (1.0 + p.value)), 0.0);
}

TEST_F(Calibrated, NoCrossoverStatus) {
  EnergyParams e = cal_.energy;
  e.p_leak_per_col = 0.0;
  e.e_pseudo_cim_per_col = 0.0;
  EXPECT_FALSE(crossover_frequency(e, big_, kDelta, kVread).found);
  EXPECT_FALSE(crossover_parallelism(e, big_, kDelta, kVread).found);
}

TEST_F(Calibrated, ParallelismBounds) {
  const auto s = setup(SensingScheme::Precharged);
  EXPECT_THROW(energy_cim_adra(big_, cal_.energy, s, 0.0), InvalidParams);
  EXPECT_THROW(energy_cim_adra(big_, cal_.energy, s, 1.5), InvalidParams);
  EXPECT_GT(energy_cim_adra(big_, cal_.energy, s, 0.25).total,
            energy_cim_adra(big_, cal_.energy, s, 1.0).total);
}

TEST(EnergyParams, UncalibratedRejected) {
  EXPECT_THROW(energy_read(ArrayGeometry{}, EnergyParams{}, SensingSetup{}), InvalidParams);
  EnergyParams e;
  e.e_rbl_per_row = 1.0;
  e.e_wl_per_col = -1.0;
  EXPECT_THROW(e.validate(), InvalidParams);
  EXPECT_THROW(latency(OpKind::Read, ArrayGeometry{}, SensingScheme::Current, TimingParams{}),
               InvalidParams);
}

TEST(Calibrate, InfeasibleTargetsThrow) {
  CalibrationTargets t;
  t.current_speedup = 1.2;  // would need a negative settle time
  EXPECT_THROW(calibrate(t, kDelta, kVread), InfeasibleTargets);
  t = CalibrationTargets{};
  t.cim_to_read_energy = 1.0;  // less than the extra wordline and sense energy
  EXPECT_THROW(calibrate(t, kDelta, kVread), InfeasibleTargets);
}

TEST(Calibrate, AllCoefficientsNonNegative) {
  const Calibration c = calibrate(CalibrationTargets{}, kDelta, kVread);
  EXPECT_NO_THROW(c.energy.validate());
  EXPECT_NO_THROW(c.timing.validate());
  EXPECT_DOUBLE_EQ(c.timing.t_compute, 1e-9);
}

TEST(SensingScheme, NamesRoundTrip) {
  for (auto s : {SensingScheme::Current, SensingScheme::Precharged, SensingScheme::Discharged}) {
    EXPECT_EQ(parse_scheme(to_string(s)), s);
  }
  EXPECT_FALSE(parse_scheme("scheme3").has_value());
}

}  // namespace
}  // namespace adra
