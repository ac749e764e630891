#pragma once

/// @file stats.hpp
/// Repeated-run statistics of stochastic searches: percent relative
/// difference to the exhaustive optimum, its 95th percentile, the empirical
/// CDF, and log-log power-law fits.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "pdopt/optimizers.hpp"

namespace pdopt {

/// 100 (merit_syst - merit) / merit_syst. Throws ConsistencyError when
/// merit > merit_syst and DomainError when merit_syst <= 0 or merit < 0.
double epsilon(double merit, double merit_syst);

/// Nearest-rank 95th percentile: the ceil(0.95 n)-th smallest value.
/// Throws DomainError on an empty input.
double epsilon95(std::span<const double> epsilons);

/// F(x) = fraction of samples <= x for every x in `grid`.
std::vector<std::pair<double, double>> cumulative_distribution(std::span<const double> epsilons,
                                                               std::span<const double> grid);

/// Smallest sample x with F(x) >= level.
double quantile_from_cdf(std::span<const double> epsilons, double level);

struct PowerLawFit {
  double beta = 0.0;           ///< -slope of ln(eps95) against ln(N)
  double log_intercept = 0.0;  ///< natural-log intercept
  double r_squared = 0.0;
  std::size_t n_points = 0;
};

/// OLS on (ln N, ln y). Needs >= 3 points, all strictly positive.
PowerLawFit fit_power_law(std::span<const std::pair<double, double>> points);

struct RunRecord {
  std::size_t run_index = 0;
  std::uint64_t seed = 0;
  double epsilon = 100.0;
  double best_merit = 0.0;
  DesignPoint best_point;
  std::uint64_t evaluations = 0;
  std::uint64_t nominal_evaluations = 0;
  double elapsed = 0.0;
  bool failed = false;  ///< initialization error; epsilon recorded as 100
};

struct ExperimentStats {
  std::vector<RunRecord> runs;    ///< ordered by run index
  std::vector<double> epsilons;   ///< ascending
  double eps95 = 100.0;
  bool censored = false;          ///< eps95 landed on a zero-merit (eps = 100) run
  std::size_t n_runs = 0;
  double reference_merit = 0.0;
};

/// One search run for a given seed.
using RunFactory = std::function<SearchResult(std::uint64_t seed)>;

/// Runs i = 0..n_runs-1 with seed base_seed + i, optionally on several
/// threads. The result is identical for any thread count.
ExperimentStats run_experiments(const RunFactory& factory, std::size_t n_runs,
                                std::uint64_t base_seed, double reference_merit,
                                unsigned threads = 1);

}  // namespace pdopt
