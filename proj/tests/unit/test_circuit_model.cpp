#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "oracles.hpp"
#include "pdopt/circuit_model.hpp"
#include "pdopt/config.hpp"
#include "pdopt/errors.hpp"

using namespace pdopt;

namespace {

PhotodiodeParams bpw34() { return load_photodiode(oracle::data_dir() / "fixtures" / "bpw34.yaml"); }
OpAmpParams op07() { return load_opamp(oracle::data_dir() / "fixtures" / "op07.yaml"); }

OperatingConditions conditions() {
  OperatingConditions c;
  c.min_irradiance = 0.005;
  c.temperature = 300.0;
  return c;
}

OpAmpParams ideal_amp() {
  OpAmpParams oa = op07();
  oa.dc_gain = 1e9;
  oa.gbw = 1e18;
  return oa;
}

DesignSpace grid() {
  return DesignSpace(e_series_values({ESeries::E24, 4, 7}), e_series_values({ESeries::E24, -12, -9}),
                     discretize_bias(0.0, 32.0, 72));
}

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

}  // namespace

TEST(DiodeCapacitance, ReproducesTableKnots) {
  const auto pd = bpw34();
  for (const auto& k : pd.cv_curve)
    EXPECT_NEAR(diode_capacitance(pd, k.reverse_voltage), k.capacitance, 1e-9 * k.capacitance);
  EXPECT_DOUBLE_EQ(diode_capacitance(pd, 0.0), 70e-12);
  EXPECT_DOUBLE_EQ(diode_capacitance(pd, 60.0), 7.3e-12);
}

TEST(DiodeCapacitance, MatchesIndependentInterpolation) {
  const auto pd = bpw34();
  std::vector<std::pair<double, double>> cv;
  for (const auto& k : pd.cv_curve) cv.emplace_back(k.reverse_voltage, k.capacitance);
  for (double v : {0.05, 0.5, 2.0, 5.0, 14.79, 25.0, 45.0})
    EXPECT_NEAR(diode_capacitance(pd, v), oracle::capacitance(cv, v), 1e-12 * oracle::capacitance(cv, v));
}

TEST(DiodeCapacitance, OutOfRangeBiasIsRejected) {
  const auto pd = bpw34();
  EXPECT_THROW(diode_capacitance(pd, -0.1), DomainError);
  EXPECT_THROW(diode_capacitance(pd, 60.1), DomainError);
  EXPECT_THROW(diode_capacitance(pd, std::nan("")), DomainError);
  EXPECT_THROW(evaluate_performance({1e6, 1e-11, 61.0}, pd, op07(), conditions()), DomainError);
}

TEST(DiodeCapacitance, NonIncreasingWithBias) {
  const auto pd = bpw34();
  double prev = diode_capacitance(pd, 0.0);
  for (int i = 1; i <= 1000; ++i) {
    const double c = diode_capacitance(pd, 60.0 * i / 1000.0);
    ASSERT_LE(c, prev) << i;
    prev = c;
  }
}

TEST(LoopGain, MatchesNaiveComplexEvaluation) {
  const auto pd = bpw34();
  const auto oa = op07();
  for (const DesignPoint p : {DesignPoint{620e3, 3.6e-12, 14.79}, DesignPoint{1e4, 1e-12, 0.0},
                              DesignPoint{9.1e6, 9.1e-10, 32.0}}) {
    const auto naive = oracle::naive_tia(p, pd, oa);
    const auto state = CircuitState::make(p, pd, oa);
    for (double f : {0.5, 10.0, 1e3, 2.2e4, 6e5, 1e7}) {
      const auto t = loop_gain(p, pd, oa, f);
      EXPECT_LT(std::abs(t - naive.loop(f)), 1e-9 * std::abs(naive.loop(f))) << f;
      EXPECT_LT(std::abs(state.transimpedance(f) - naive.z_t(f)), 1e-9 * std::abs(naive.z_t(f))) << f;
      EXPECT_LT(std::abs(state.voltage_noise_gain(f) - naive.noise_gain_closed(f)),
                1e-9 * std::abs(naive.noise_gain_closed(f)))
          << f;
      EXPECT_NEAR(state.loop_gain_norm(f), std::norm(naive.loop(f)), 1e-9 * std::norm(naive.loop(f)));
    }
  }
}

TEST(LoopGain, LowFrequencyLimitIsDcGain) {
  const auto pd = bpw34();
  const auto oa = op07();
  const DesignPoint p{620e3, 3.6e-12, 14.79};
  const auto t = loop_gain(p, pd, oa, 1e-6);
  EXPECT_NEAR(t.real(), oa.dc_gain, 1e-6 * oa.dc_gain);
  EXPECT_NEAR(t.imag(), 0.0, 1e-3 * oa.dc_gain);
  EXPECT_THROW(loop_gain(p, pd, oa, 0.0), DomainError);
}

TEST(LoopGain, UnityAtGbwWhenFeedbackFactorIsOne) {
  auto pd = bpw34();
  auto oa = op07();
  oa.input_capacitance = 1e-30;
  for (auto& k : pd.cv_curve) k.capacitance *= 1e-18;
  const auto t = loop_gain({1e4, 1e-9, 0.0}, pd, oa, oa.gbw);
  EXPECT_NEAR(std::abs(t), 1.0, 1e-4);
}

TEST(Bandwidth, IdealAmplifierGivesFeedbackCorner) {
  const auto pd = bpw34();
  const auto oa = ideal_amp();
  for (const DesignPoint p : {DesignPoint{1e6, 1e-11, 5.0}, DesignPoint{1e4, 1e-12, 0.0},
                              DesignPoint{4.7e5, 2.2e-10, 30.0}}) {
    const double expected = 1.0 / (2.0 * std::numbers::pi * p.rf * p.cf);
    EXPECT_LT(rel(bandwidth(p, pd, oa), expected), 0.01);
    const double doubled = bandwidth({p.rf, 2.0 * p.cf, p.vd}, pd, oa);
    EXPECT_LT(rel(doubled, 0.5 * expected), 0.01);
  }
}

TEST(Bandwidth, IdealAmplifierDecreasesInRfAndCf) {
  const auto pd = bpw34();
  const auto oa = ideal_amp();
  const auto g = grid();
  for (std::size_t k = 0; k < g.axis_size(2); k += 23) {
    for (std::size_t j = 0; j < g.axis_size(1); j += 7)
      for (std::size_t i = 1; i < g.axis_size(0); ++i)
        ASSERT_LT(bandwidth(g.at(GridIndex{i, j, k}), pd, oa), bandwidth(g.at(GridIndex{i - 1, j, k}), pd, oa));
    for (std::size_t i = 0; i < g.axis_size(0); i += 7)
      for (std::size_t j = 1; j < g.axis_size(1); ++j)
        ASSERT_LT(bandwidth(g.at(GridIndex{i, j, k}), pd, oa), bandwidth(g.at(GridIndex{i, j - 1, k}), pd, oa));
  }
}

TEST(Bandwidth, MatchesNaiveScanAndBisection) {
  const auto pd = bpw34();
  const auto oa = op07();
  const auto g = grid();
  Rng rng(5);
  int checked = 0;
  for (int n = 0; n < 300; ++n) {
    const DesignPoint p = g.sample_uniform(rng);
    const auto naive = oracle::naive_tia(p, pd, oa);
    const double expected = oracle::naive_bandwidth(naive, 10.0 * oa.gbw);
    if (std::isnan(expected) || expected < 2.0) continue;
    EXPECT_LT(rel(bandwidth(p, pd, oa), expected), 1e-4) << p.rf << " " << p.cf << " " << p.vd;
    ++checked;
  }
  EXPECT_GT(checked, 200);
}

TEST(Bandwidth, NoCrossingIsModelError) {
  const auto pd = bpw34();
  const auto oa = op07();
  const DesignPoint p{1e9, 1e-6, 0.0};
  EXPECT_THROW(bandwidth(p, pd, oa), ModelError);
  const auto perf = evaluate_performance(p, pd, oa, conditions());
  EXPECT_FALSE(perf.model_ok);
  EXPECT_TRUE(std::isnan(perf.bandwidth_hz));
}

TEST(PhaseMargin, NearNinetyWhenFeedbackCapDominates) {
  const auto pd = bpw34();
  const auto oa = op07();
  const double pm = phase_margin({1e4, 9.1e-10, 32.0}, pd, oa);
  EXPECT_GE(pm, 89.0);
  EXPECT_LE(pm, 90.0 + 1e-9);
}

TEST(PhaseMargin, UnityCrossingPhaseMatchesNaiveLoopGain) {
  const auto pd = bpw34();
  const auto oa = op07();
  const DesignPoint p{620e3, 3.6e-12, 14.79};
  const auto naive = oracle::naive_tia(p, pd, oa);
  double lo = 1.0, hi = 10.0 * oa.gbw;
  for (int i = 0; i < 200; ++i) {
    const double mid = std::sqrt(lo * hi);
    (std::abs(naive.loop(mid)) > 1.0 ? lo : hi) = mid;
  }
  const double expected = 180.0 + std::arg(naive.loop(lo)) * 180.0 / std::numbers::pi;
  EXPECT_NEAR(phase_margin(p, pd, oa), expected, 1e-3);
}

TEST(PhaseMargin, NonDecreasingInCf) {
  const auto pd = bpw34();
  const auto oa = op07();
  const auto g = grid();
  for (std::size_t i = 0; i < g.axis_size(0); i += 5)
    for (std::size_t k = 0; k < g.axis_size(2); k += 11) {
      double prev = phase_margin(g.at(GridIndex{i, 0, k}), pd, oa);
      for (std::size_t j = 1; j < g.axis_size(1); ++j) {
        const double pm = phase_margin(g.at(GridIndex{i, j, k}), pd, oa);
        ASSERT_GE(pm, prev - 1e-6) << i << " " << j << " " << k;
        prev = pm;
      }
    }
}

TEST(Snr, DoublesSignalWithoutShotNoise) {
  const auto pd = bpw34();
  const auto oa = op07();
  auto cond = conditions();
  cond.noise.shot = false;
  const DesignPoint p{620e3, 3.6e-12, 14.79};
  const double base = snr(p, pd, oa, cond);
  cond.min_irradiance *= 2.0;
  EXPECT_NEAR(snr(p, pd, oa, cond) - base, 20.0 * std::log10(2.0), 1e-9);
}

TEST(Snr, ThermalNoiseFollowsEquivalentNoiseBandwidth) {
  const auto pd = bpw34();
  const auto oa = ideal_amp();
  auto cond = conditions();
  cond.noise = {false, false, false, true};
  const DesignPoint p{1e6, 1e-11, 5.0};
  const double corner = 1.0 / (2.0 * std::numbers::pi * p.rf * p.cf);
  const double enb = corner * std::numbers::pi / 2.0;
  const double expected = std::sqrt(4.0 * 1.380649e-23 * 300.0 / p.rf) * p.rf * std::sqrt(enb);
  EXPECT_LT(rel(output_noise_rms(p, pd, oa, cond), expected), 0.10);
}

TEST(Snr, MatchesNaiveNoiseIntegral) {
  const auto pd = bpw34();
  const auto oa = op07();
  const auto cond = conditions();
  const double decades = std::log10(std::min(10.0 * oa.gbw, 1e9));
  const double i_ph = pd.responsivity * cond.min_irradiance * pd.active_area;
  for (const DesignPoint p : {DesignPoint{620e3, 3.6e-12, 14.79}, DesignPoint{1e4, 1e-12, 0.0},
                              DesignPoint{9.1e6, 9.1e-10, 32.0}, DesignPoint{1.6e6, 5.1e-12, 9.915}}) {
    const auto naive = oracle::naive_tia(p, pd, oa);
    const double noise = oracle::naive_noise_rms(naive, oa.voltage_noise_density, oa.current_noise_density,
                                                 i_ph + pd.dark_current, cond.temperature, decades, 400.0);
    EXPECT_LT(rel(output_noise_rms(p, pd, oa, cond), noise), 5e-3);
    EXPECT_NEAR(snr(p, pd, oa, cond), 20.0 * std::log10(i_ph * p.rf / noise), 0.05);
  }
}

TEST(EvaluatePerformance, DeterministicAndBitIdentical) {
  const CircuitEvaluator ev(bpw34(), op07(), conditions());
  const DesignPoint p{620e3, 3.6e-12, 14.79};
  const auto a = ev.evaluate(p);
  for (int i = 0; i < 5; ++i) EXPECT_EQ(ev.evaluate(p), a);
}

TEST(EvaluatePerformance, TotalOverTheExampleGrid) {
  const CircuitEvaluator ev(bpw34(), op07(), conditions());
  const auto g = grid();
  std::uint64_t ok = 0;
  for (const auto& p : g.enumerate()) {
    const auto perf = ev.evaluate(p);
    ASSERT_TRUE(std::isfinite(perf.snr_db));
    ASSERT_GE(perf.phase_margin_deg, 0.0);
    ASSERT_LE(perf.phase_margin_deg, 180.0);
    if (perf.model_ok) {
      ASSERT_TRUE(std::isfinite(perf.bandwidth_hz));
      ASSERT_GT(perf.bandwidth_hz, 0.0);
      ++ok;
    } else {
      ASSERT_TRUE(std::isnan(perf.bandwidth_hz));
    }
  }
  EXPECT_GT(ok, g.cardinality() / 2);
}

TEST(Parameters, InvalidFixturesAreRejected) {
  auto pd = bpw34();
  pd.cv_curve[2].capacitance = pd.cv_curve[1].capacitance;
  EXPECT_THROW(pd.validate(), ConfigError);
  auto oa = op07();
  oa.gbw = -1.0;
  EXPECT_THROW(oa.validate(), ConfigError);
  auto cond = conditions();
  cond.min_irradiance = 0.0;
  EXPECT_THROW(cond.validate(), ConfigError);
}
