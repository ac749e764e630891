#include "pdopt/optimizers.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>
#include <sstream>
#include <thread>

#include "pdopt/errors.hpp"

namespace pdopt {
namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

struct Best {
  std::uint64_t flat = 0;
  MeritBreakdown merit;
  bool found = false;

  void offer(std::uint64_t candidate, const MeritBreakdown& m) {
    if (!found || m.global > merit.global) {
      flat = candidate;
      merit = m;
      found = true;
    }
  }
};

Best scan_range(const DesignSpace& space, const ScoreFn& score, std::uint64_t begin,
                std::uint64_t end) {
  Best best;
  for (std::uint64_t i = begin; i < end; ++i) best.offer(i, score(space.at(i)));
  return best;
}

Chromosome make_chromosome(const DesignSpace& space, const ScoreFn& score, const GridIndex& genes) {
  Chromosome c{genes, space.at(genes), {}};
  c.merit = score(c.point);
  return c;
}

void keep_best(SearchResult& result, const Chromosome& c) {
  if (c.merit.global > result.best_merit.global) {
    result.best_index = c.genes;
    result.best_point = c.point;
    result.best_merit = c.merit;
  }
}

}  // namespace

ScoreFn make_score(const Evaluator& evaluator, const MeritSpec& spec) {
  return [&evaluator, &spec](const DesignPoint& p) {
    return global_merit(evaluator.evaluate(p), spec);
  };
}

SearchResult systematic_search(const DesignSpace& space, const ScoreFn& score,
                               SearchOptions options) {
  const auto start = Clock::now();
  const std::uint64_t n = space.cardinality();
  const unsigned threads =
      static_cast<unsigned>(std::clamp<std::uint64_t>(options.threads, 1, std::max<std::uint64_t>(n, 1)));

  // Contiguous chunks reduced in chunk order keep the first-in-enumeration
  // tie-break independent of the partitioning.
  std::vector<Best> partial(threads);
  if (threads == 1) {
    partial[0] = scan_range(space, score, 0, n);
  } else {
    std::vector<std::jthread> workers;
    for (unsigned t = 0; t < threads; ++t) {
      const std::uint64_t begin = n * t / threads;
      const std::uint64_t end = n * (t + 1) / threads;
      workers.emplace_back([&, t, begin, end] { partial[t] = scan_range(space, score, begin, end); });
    }
  }

  Best best;
  for (const auto& p : partial)
    if (p.found) best.offer(p.flat, p.merit);

  SearchResult result;
  result.best_index = space.unflatten(best.flat);
  result.best_point = space.at(best.flat);
  result.best_merit = best.merit;
  result.evaluations = n;
  result.nominal_evaluations = n;
  result.elapsed = seconds_since(start);
  return result;
}

SearchResult systematic_search(const DesignSpace& space, const Evaluator& evaluator,
                               const MeritSpec& spec, SearchOptions options) {
  return systematic_search(space, make_score(evaluator, spec), options);
}

void MCConfig::validate() const {
  if (n_mc < 1) throw ConfigError("n_mc must be >= 1");
}

SearchResult montecarlo_search(const DesignSpace& space, const ScoreFn& score, const MCConfig& cfg) {
  cfg.validate();
  const auto start = Clock::now();
  Rng rng(cfg.seed);

  SearchResult result;
  bool found = false;
  for (std::uint64_t draw = 0; draw < cfg.n_mc; ++draw) {
    const GridIndex idx = space.sample_index(rng);
    const DesignPoint p = space.at(idx);
    const MeritBreakdown m = score(p);
    if (!found || m.global > result.best_merit.global) {
      result.best_index = idx;
      result.best_point = p;
      result.best_merit = m;
      found = true;
    }
  }
  result.evaluations = cfg.n_mc;
  result.nominal_evaluations = cfg.n_mc;
  result.elapsed = seconds_since(start);
  return result;
}

SearchResult montecarlo_search(const DesignSpace& space, const Evaluator& evaluator,
                               const MeritSpec& spec, const MCConfig& cfg) {
  return montecarlo_search(space, make_score(evaluator, spec), cfg);
}

GridSearchOutcome montecarlo_search_grid(std::span<const std::size_t> axis_sizes,
                                         const GridMeritFn& merit, std::uint64_t n_draws,
                                         Rng& rng) {
  if (axis_sizes.empty() || n_draws < 1) throw DomainError("grid search needs axes and draws");
  for (auto s : axis_sizes)
    if (s == 0) throw DomainError("grid axis is empty");

  GridSearchOutcome out;
  std::vector<std::size_t> idx(axis_sizes.size());
  for (std::uint64_t draw = 0; draw < n_draws; ++draw) {
    for (std::size_t k = 0; k < idx.size(); ++k) idx[k] = uniform_index(rng, axis_sizes[k]);
    const double m = merit(idx);
    if (draw == 0 || m > out.best_merit) {
      out.best_merit = m;
      out.best_index = idx;
    }
  }
  out.evaluations = n_draws;
  return out;
}

// --- genetic algorithm ----------------------------------------------------

void GAConfig::validate() const {
  if (n_c < 2 || n_c % 2 != 0) throw ConfigError("n_c must be even and >= 2");
  if (gen < 1) throw ConfigError("gen must be >= 1");
  if (!(mut_percent >= 0.0 && mut_percent <= 100.0)) throw ConfigError("mut_percent must be in [0, 100]");
  if (init_attempt_cap < n_c) throw ConfigError("init_attempt_cap must be >= n_c");
  if (!(selection_floor >= 0.0 && selection_floor <= 1.0))
    throw ConfigError("selection_floor must be in [0, 1]");
}

InitialPopulation ga_init_population(const DesignSpace& space, const ScoreFn& score,
                                     const GAConfig& cfg, Rng& rng) {
  InitialPopulation init;
  init.chromosomes.reserve(cfg.n_c);
  while (init.chromosomes.size() < cfg.n_c) {
    if (init.evaluations >= cfg.init_attempt_cap) {
      const double zero_fraction =
          static_cast<double>(init.rejected) / static_cast<double>(init.evaluations);
      std::ostringstream msg;
      msg << "first generation incomplete after " << init.evaluations << " draws ("
          << init.chromosomes.size() << " of " << cfg.n_c
          << " non-zero merit chromosomes); zero-merit fraction " << zero_fraction;
      throw InitializationError(msg.str(), zero_fraction);
    }
    Chromosome c = make_chromosome(space, score, space.sample_index(rng));
    ++init.evaluations;
    if (c.merit.global > 0.0) init.chromosomes.push_back(c);
    else ++init.rejected;
  }
  return init;
}

ParentSelector::ParentSelector(std::span<const Chromosome> population, double selection_floor)
    : population_(population), floor_(selection_floor), max_merit_(0.0) {
  if (population.empty()) throw DomainError("cannot select from an empty population");
  for (const auto& c : population) max_merit_ = std::max(max_merit_, c.merit.global);
}

std::size_t ParentSelector::select(Rng& rng) const {
  // Degenerate all-zero population with no floor: fall back to uniform choice.
  if (max_merit_ <= 0.0 && floor_ <= 0.0) return uniform_index(rng, population_.size());
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (;;) {
    const std::size_t i = uniform_index(rng, population_.size());
    const double ratio = max_merit_ > 0.0 ? population_[i].merit.global / max_merit_ : 0.0;
    if (unit(rng) < std::max(ratio, floor_)) return i;
  }
}

std::size_t ga_select_parent(std::span<const Chromosome> population, double selection_floor,
                             Rng& rng) {
  return ParentSelector(population, selection_floor).select(rng);
}

std::pair<GridIndex, GridIndex> recombine_genes(const GridIndex& p1, const GridIndex& p2,
                                                RecombinationMode mode) noexcept {
  switch (mode) {
    case RecombinationMode::A: return {{p1.rf, p2.cf, p2.vd}, {p2.rf, p1.cf, p1.vd}};
    case RecombinationMode::B: return {{p1.rf, p1.cf, p2.vd}, {p2.rf, p2.cf, p1.vd}};
    case RecombinationMode::C: return {{p1.rf, p2.cf, p1.vd}, {p2.rf, p1.cf, p2.vd}};
  }
  return {p1, p2};
}

Offspring ga_recombine(const Chromosome& parent1, const Chromosome& parent2,
                       const DesignSpace& space, const ScoreFn& score, Rng& rng) {
  const auto mode = static_cast<RecombinationMode>(uniform_index(rng, 3));
  const auto [g1, g2] = recombine_genes(parent1.genes, parent2.genes, mode);
  return {make_chromosome(space, score, g1), make_chromosome(space, score, g2), mode};
}

std::size_t mutation_count(std::size_t n_c, double mut_percent) noexcept {
  return static_cast<std::size_t>(std::llround(static_cast<double>(n_c) * mut_percent / 100.0));
}

std::uint64_t ga_mutate(std::vector<Chromosome>& generation, double mut_percent,
                        const DesignSpace& space, const ScoreFn& score, Rng& rng) {
  const std::size_t n = generation.size();
  const std::size_t k = std::min(n, mutation_count(n, mut_percent));
  if (k == 0) return 0;

  // Partial Fisher-Yates: the first k slots end up holding k distinct picks.
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  for (std::size_t i = 0; i < k; ++i) std::swap(order[i], order[i + uniform_index(rng, n - i)]);

  for (std::size_t i = 0; i < k; ++i) {
    Chromosome& c = generation[order[i]];
    GridIndex genes = c.genes;
    switch (uniform_index(rng, 3)) {
      case 0: genes.rf = uniform_index(rng, space.rf_values().size()); break;
      case 1: genes.cf = uniform_index(rng, space.cf_values().size()); break;
      default: genes.vd = uniform_index(rng, space.vd_values().size()); break;
    }
    c = make_chromosome(space, score, genes);
  }
  return k;
}

SearchResult ga_search(const DesignSpace& space, const ScoreFn& score, const GAConfig& cfg,
                       const GenerationObserver& observer) {
  cfg.validate();
  const auto start = Clock::now();
  Rng rng(cfg.seed);

  SearchResult result;
  InitialPopulation init = ga_init_population(space, score, cfg, rng);
  std::vector<Chromosome> population = std::move(init.chromosomes);
  result.evaluations = init.evaluations;
  result.init_rejections = init.rejected;
  result.nominal_evaluations = cfg.nominal_evaluations();
  result.best_index = population.front().genes;
  result.best_point = population.front().point;
  result.best_merit = population.front().merit;

  auto record_generation = [&] {
    double gen_best = 0.0;
    for (const auto& c : population) {
      keep_best(result, c);
      gen_best = std::max(gen_best, c.merit.global);
    }
    result.generation_best.push_back(gen_best);
    result.history.push_back(result.best_merit.global);
    if (observer) observer(result.history.size(), population);
  };
  record_generation();

  std::vector<Chromosome> next;
  next.reserve(cfg.n_c);
  for (std::size_t g = 1; g < cfg.gen; ++g) {
    next.clear();
    const ParentSelector selector(population, cfg.selection_floor);
    for (std::size_t couple = 0; couple < cfg.n_c / 2; ++couple) {
      const std::size_t a = selector.select(rng);
      const std::size_t b = selector.select(rng);
      if (a == b) ++result.self_pairings;
      Offspring kids = ga_recombine(population[a], population[b], space, score, rng);
      next.push_back(kids.first);
      next.push_back(kids.second);
    }
    result.evaluations += cfg.n_c;
    result.evaluations += ga_mutate(next, cfg.mut_percent, space, score, rng);
    population.swap(next);
    record_generation();
  }

  result.elapsed = seconds_since(start);
  return result;
}

SearchResult ga_search(const DesignSpace& space, const Evaluator& evaluator, const MeritSpec& spec,
                       const GAConfig& cfg) {
  return ga_search(space, make_score(evaluator, spec), cfg);
}

}  // namespace pdopt
