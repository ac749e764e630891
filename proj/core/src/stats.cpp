#include "pdopt/stats.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

#include "pdopt/errors.hpp"

namespace pdopt {

double epsilon(double merit, double merit_syst) {
  if (!(merit_syst > 0.0)) throw DomainError("reference merit must be positive");
  if (!(merit >= 0.0)) throw DomainError("merit must be non-negative");
  if (merit > merit_syst)
    throw ConsistencyError("merit exceeds the reference optimum; the reference is not the global optimum");
  return 100.0 * (merit_syst - merit) / merit_syst;
}

double epsilon95(std::span<const double> epsilons) {
  if (epsilons.empty()) throw DomainError("epsilon95 of an empty sample");
  std::vector<double> sorted(epsilons.begin(), epsilons.end());
  std::sort(sorted.begin(), sorted.end());
  // ceil(0.95 n) in integer arithmetic avoids 0.95 * n rounding up spuriously.
  const std::size_t rank = (95 * sorted.size() + 99) / 100;
  return sorted[rank - 1];
}

std::vector<std::pair<double, double>> cumulative_distribution(std::span<const double> epsilons,
                                                               std::span<const double> grid) {
  if (epsilons.empty() || grid.empty()) throw DomainError("cumulative distribution of empty input");
  std::vector<double> sorted(epsilons.begin(), epsilons.end());
  std::sort(sorted.begin(), sorted.end());
  const double n = static_cast<double>(sorted.size());

  std::vector<std::pair<double, double>> out;
  out.reserve(grid.size());
  for (double x : grid) {
    const auto count = std::upper_bound(sorted.begin(), sorted.end(), x) - sorted.begin();
    out.emplace_back(x, static_cast<double>(count) / n);
  }
  return out;
}

double quantile_from_cdf(std::span<const double> epsilons, double level) {
  if (epsilons.empty()) throw DomainError("quantile of an empty sample");
  std::vector<double> sorted(epsilons.begin(), epsilons.end());
  std::sort(sorted.begin(), sorted.end());
  const auto cdf = cumulative_distribution(sorted, sorted);
  for (const auto& [x, f] : cdf)
    if (f >= level) return x;
  return sorted.back();
}

PowerLawFit fit_power_law(std::span<const std::pair<double, double>> points) {
  if (points.size() < 3) throw DomainError("power-law fit needs at least three points");
  double sx = 0.0, sy = 0.0;
  for (const auto& [n, y] : points) {
    if (!(n > 0.0) || !(y > 0.0)) throw DomainError("power-law fit needs strictly positive values");
    sx += std::log(n);
    sy += std::log(y);
  }
  const double count = static_cast<double>(points.size());
  const double mx = sx / count;
  const double my = sy / count;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (const auto& [n, y] : points) {
    const double dx = std::log(n) - mx;
    const double dy = std::log(y) - my;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }
  if (sxx == 0.0) throw DomainError("power-law fit needs at least two distinct N values");

  PowerLawFit fit;
  const double slope = sxy / sxx;
  fit.beta = -slope;
  fit.log_intercept = my - slope * mx;
  fit.r_squared = syy == 0.0 ? 1.0 : (sxy * sxy) / (sxx * syy);
  fit.n_points = points.size();
  return fit;
}

ExperimentStats run_experiments(const RunFactory& factory, std::size_t n_runs,
                                std::uint64_t base_seed, double reference_merit, unsigned threads) {
  if (n_runs < 1) throw DomainError("n_runs must be >= 1");
  if (!(reference_merit > 0.0)) throw DomainError("reference merit must be positive");

  ExperimentStats stats;
  stats.n_runs = n_runs;
  stats.reference_merit = reference_merit;
  stats.runs.resize(n_runs);

  auto run_one = [&](std::size_t i) {
    RunRecord& rec = stats.runs[i];
    rec.run_index = i;
    rec.seed = base_seed + i;
    try {
      const SearchResult r = factory(rec.seed);
      rec.best_merit = r.best_merit.global;
      rec.best_point = r.best_point;
      rec.evaluations = r.evaluations;
      rec.nominal_evaluations = r.nominal_evaluations;
      rec.elapsed = r.elapsed;
      rec.epsilon = epsilon(rec.best_merit, reference_merit);
    } catch (const InitializationError&) {
      rec.failed = true;
      rec.epsilon = 100.0;
    }
  };

  threads = static_cast<unsigned>(std::clamp<std::size_t>(threads, 1, n_runs));
  if (threads == 1) {
    for (std::size_t i = 0; i < n_runs; ++i) run_one(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    {
      std::vector<std::jthread> workers;
      for (unsigned t = 0; t < threads; ++t)
        workers.emplace_back([&] {
          for (std::size_t i = next++; i < n_runs; i = next++) {
            try {
              run_one(i);
            } catch (...) {
              std::lock_guard lock(error_mutex);
              if (!error) error = std::current_exception();
            }
          }
        });
    }
    if (error) std::rethrow_exception(error);
  }

  stats.epsilons.reserve(n_runs);
  for (const auto& r : stats.runs) stats.epsilons.push_back(r.epsilon);
  std::sort(stats.epsilons.begin(), stats.epsilons.end());
  stats.eps95 = epsilon95(stats.epsilons);
  stats.censored = stats.eps95 >= 100.0;
  return stats;
}

}  // namespace pdopt
