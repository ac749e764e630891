#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "oracles.hpp"
#include "pdopt/errors.hpp"
#include "pdopt/stats.hpp"
#include "separable.hpp"

using namespace pdopt;

namespace {

DesignSpace cube3() { return DesignSpace({1e5, 2e5, 3e5}, {1e-11, 2e-11, 3e-11}, {0.0, 1.0, 2.0}); }

ScoreFn cube3_score() {
  return [](const DesignPoint& p) {
    const double d = std::abs(p.rf / 1e5 - 2.0) + std::abs(p.cf / 1e-11 - 2.0) + std::abs(p.vd - 1.0);
    return MeritBreakdown::from_parts(1.0 / (1.0 + d), 1.0, 1.0);
  };
}

}  // namespace

TEST(Epsilon, Examples) {
  EXPECT_EQ(epsilon(0.5, 0.5), 0.0);
  EXPECT_EQ(epsilon(0.0, 0.5), 100.0);
  EXPECT_NEAR(epsilon(0.9116, 0.9338), 2.377382737202827, 1e-9);
  EXPECT_NEAR(epsilon(0.9116, 0.9338), 2.38, 0.005);
}

TEST(Epsilon, Errors) {
  EXPECT_THROW(epsilon(0.6, 0.5), ConsistencyError);
  EXPECT_THROW(epsilon(0.1, 0.0), DomainError);
  EXPECT_THROW(epsilon(-0.1, 0.5), DomainError);
}

TEST(Epsilon95, NearestRank) {
  std::vector<double> zeros(37, 0.0);
  EXPECT_EQ(epsilon95(zeros), 0.0);
  std::vector<double> v(100);
  std::iota(v.begin(), v.end(), 1.0);
  std::reverse(v.begin(), v.end());
  EXPECT_EQ(epsilon95(v), 95.0);
  std::vector<double> twenty(20);
  std::iota(twenty.begin(), twenty.end(), 1.0);
  EXPECT_EQ(epsilon95(twenty), 19.0);
  std::vector<double> twenty_one(21);
  std::iota(twenty_one.begin(), twenty_one.end(), 1.0);
  EXPECT_EQ(epsilon95(twenty_one), 20.0);
  EXPECT_EQ(epsilon95(std::vector<double>{7.0}), 7.0);
  EXPECT_THROW(epsilon95(std::vector<double>{}), DomainError);
}

TEST(CumulativeDistribution, SingleSample) {
  const std::vector<double> sample{5.0};
  const std::vector<double> grid{0.0, 4.999, 5.0, 6.0, 100.0};
  const auto cdf = cumulative_distribution(sample, grid);
  ASSERT_EQ(cdf.size(), grid.size());
  EXPECT_EQ(cdf[0].second, 0.0);
  EXPECT_EQ(cdf[1].second, 0.0);
  EXPECT_EQ(cdf[2].second, 1.0);
  EXPECT_EQ(cdf[3].second, 1.0);
  EXPECT_EQ(cdf[4].second, 1.0);
}

TEST(CumulativeDistribution, UniformSamplesGiveLinearNonDecreasingCurve) {
  std::vector<double> sample;
  for (int i = 0; i < 1000; ++i) sample.push_back(0.1 * i);
  std::vector<double> grid;
  for (int i = 0; i <= 200; ++i) grid.push_back(0.5 * i);
  const auto cdf = cumulative_distribution(sample, grid);
  double prev = 0.0;
  for (const auto& [x, f] : cdf) {
    EXPECT_GE(f, prev);
    prev = f;
    EXPECT_NEAR(f, std::min(1.0, x / 100.0), 0.002);
  }
  EXPECT_EQ(cdf.back().second, 1.0);
  EXPECT_THROW(cumulative_distribution(std::vector<double>{}, grid), DomainError);
}

TEST(CumulativeDistribution, ConsistentWithEpsilon95) {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(0.0, 100.0);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<double> s(1 + trial * 5);
    for (auto& x : s) x = std::round(u(rng) * 4.0) / 4.0;
    const double e95 = epsilon95(s);
    EXPECT_EQ(quantile_from_cdf(s, 0.95), e95);
    const std::vector<double> at{e95};
    EXPECT_GE(cumulative_distribution(s, at).front().second, 0.95);
  }
}

TEST(PowerLaw, ExactLawIsRecovered) {
  std::vector<std::pair<double, double>> pts;
  for (double n : {100.0, 500.0, 1000.0, 3000.0, 10000.0}) pts.emplace_back(n, 100.0 * std::pow(n, -0.5));
  const auto fit = fit_power_law(pts);
  EXPECT_NEAR(fit.beta, 0.5, 1e-12);
  EXPECT_NEAR(fit.r_squared, 1.0, 1e-12);
  EXPECT_NEAR(fit.log_intercept, std::log(100.0), 1e-10);
  EXPECT_EQ(fit.n_points, 5u);
}

TEST(PowerLaw, Errors) {
  const std::vector<std::pair<double, double>> two{{1.0, 1.0}, {2.0, 0.5}};
  EXPECT_THROW(fit_power_law(two), DomainError);
  const std::vector<std::pair<double, double>> zero{{1.0, 1.0}, {2.0, 0.0}, {3.0, 0.2}};
  EXPECT_THROW(fit_power_law(zero), DomainError);
  const std::vector<std::pair<double, double>> same_n{{10.0, 1.0}, {10.0, 2.0}, {10.0, 3.0}};
  EXPECT_THROW(fit_power_law(same_n), DomainError);
}

TEST(RunExperiments, SingleRunAndSeedDerivation) {
  const auto space = cube3();
  const auto score = cube3_score();
  std::vector<std::uint64_t> seeds;
  const auto stats = run_experiments(
      [&](std::uint64_t seed) {
        seeds.push_back(seed);
        return montecarlo_search(space, score, {3, seed});
      },
      1, 41, 1.0);
  EXPECT_EQ(seeds, (std::vector<std::uint64_t>{41}));
  ASSERT_EQ(stats.runs.size(), 1u);
  EXPECT_EQ(stats.eps95, stats.runs[0].epsilon);
  EXPECT_EQ(stats.runs[0].seed, 41u);
}

TEST(RunExperiments, ThreadCountDoesNotChangeTheResult) {
  const auto space = cube3();
  const auto score = cube3_score();
  const RunFactory mc = [&](std::uint64_t seed) { return montecarlo_search(space, score, {4, seed}); };
  const auto one = run_experiments(mc, 200, 7, 1.0, 1);
  const auto three = run_experiments(mc, 200, 7, 1.0, 3);
  EXPECT_EQ(one.epsilons, three.epsilons);
  EXPECT_EQ(one.eps95, three.eps95);
  EXPECT_EQ(one.censored, three.censored);
  for (std::size_t i = 0; i < 200; ++i) {
    EXPECT_EQ(one.runs[i].seed, three.runs[i].seed);
    EXPECT_EQ(one.runs[i].best_point, three.runs[i].best_point);
    EXPECT_EQ(one.runs[i].epsilon, three.runs[i].epsilon);
  }
  EXPECT_TRUE(std::is_sorted(one.epsilons.begin(), one.epsilons.end()));
}

TEST(RunExperiments, ExhaustiveSamplingOfTinySpaceGivesZero) {
  const auto space = cube3();
  const auto score = cube3_score();
  const auto stats = run_experiments(
      [&](std::uint64_t seed) { return montecarlo_search(space, score, {27 * 50, seed}); }, 100, 1, 1.0);
  for (double e : stats.epsilons) EXPECT_EQ(e, 0.0);
  EXPECT_EQ(stats.eps95, 0.0);
  EXPECT_FALSE(stats.censored);
}

TEST(RunExperiments, InitializationFailureIsRecordedAsHundred) {
  const auto space = cube3();
  const ScoreFn zero = [](const DesignPoint&) { return MeritBreakdown{}; };
  GAConfig cfg;
  cfg.n_c = 4;
  cfg.init_attempt_cap = 100;
  const auto stats = run_experiments(
      [&](std::uint64_t seed) {
        auto c = cfg;
        c.seed = seed;
        return ga_search(space, zero, c);
      },
      5, 0, 1.0, 2);
  for (const auto& r : stats.runs) {
    EXPECT_TRUE(r.failed);
    EXPECT_EQ(r.epsilon, 100.0);
  }
  EXPECT_EQ(stats.eps95, 100.0);
  EXPECT_TRUE(stats.censored);
}

TEST(RunExperiments, ReferenceBelowARunIsAConsistencyError) {
  const auto space = cube3();
  const auto score = cube3_score();
  EXPECT_THROW(run_experiments([&](std::uint64_t seed) { return montecarlo_search(space, score, {100, seed}); },
                               10, 0, 0.5, 2),
               ConsistencyError);
  EXPECT_THROW(run_experiments([&](std::uint64_t seed) { return montecarlo_search(space, score, {1, seed}); },
                               0, 0, 1.0),
               DomainError);
}

TEST(SeparableLandscape, MonteCarloExponentInFourDimensions) {
  const oracle::SeparableQuadratic land;
  const auto sizes = land.axis_sizes();
  const auto counts = oracle::tabulate_offsets(land);
  const GridMeritFn merit = [&](std::span<const std::size_t> idx) { return land.merit(idx); };

  std::vector<std::pair<double, double>> measured, predicted;
  for (std::uint64_t n : {100u, 1000u, 10000u}) {
    const auto stats = run_experiments(
        [&](std::uint64_t seed) {
          Rng rng(seed);
          const auto out = montecarlo_search_grid(sizes, merit, n, rng);
          SearchResult r;
          r.best_merit = MeritBreakdown::from_parts(out.best_merit, 1.0, 1.0);
          r.evaluations = out.evaluations;
          return r;
        },
        1000, 1000 * n, 1.0);
    const double expected = oracle::predicted_eps95(land, counts, n);
    EXPECT_NEAR(stats.eps95, expected, 0.25 * expected) << n;
    measured.emplace_back(static_cast<double>(n), stats.eps95);
    predicted.emplace_back(static_cast<double>(n), expected);
  }
  const auto fit = fit_power_law(measured);
  EXPECT_GE(fit.beta, 0.40);
  EXPECT_LE(fit.beta, 0.60);
  EXPECT_GE(fit.r_squared, 0.95);
  const auto oracle_fit = fit_power_law(predicted);
  EXPECT_GE(oracle_fit.beta, 0.40);
  EXPECT_LE(oracle_fit.beta, 0.60);
}
