#pragma once

/// @file optimizers.hpp
/// Systematic (exhaustive), Monte Carlo and genetic search over a DesignSpace.
///
/// All three maximize the global merit of a scoring function. The common
/// case composes a circuit Evaluator with a MeritSpec; tests and benchmarks
/// may plug in synthetic landscapes directly as a ScoreFn.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <utility>
#include <vector>

#include "pdopt/circuit_model.hpp"
#include "pdopt/design_space.hpp"
#include "pdopt/merit.hpp"

namespace pdopt {

using ScoreFn = std::function<MeritBreakdown(const DesignPoint&)>;

/// evaluator + merit spec as a ScoreFn. Both are captured by reference.
ScoreFn make_score(const Evaluator& evaluator, const MeritSpec& spec);

struct SearchResult {
  DesignPoint best_point;
  GridIndex best_index;
  MeritBreakdown best_merit;
  std::uint64_t evaluations = 0;          ///< actual scoring calls
  std::uint64_t nominal_evaluations = 0;  ///< cardinality, n_mc, or GEN * N_C
  double elapsed = 0.0;                   ///< wall-clock seconds

  // Genetic algorithm only.
  std::vector<double> history;          ///< best merit seen so far, per generation
  std::vector<double> generation_best;  ///< best merit inside each generation
  std::uint64_t init_rejections = 0;    ///< zero-merit draws discarded at initialization
  std::uint64_t self_pairings = 0;      ///< couples whose two parents are the same chromosome
};

struct SearchOptions {
  unsigned threads = 1;
};

/// Scores every grid point. Ties go to the earliest point in enumeration
/// order independently of the thread count.
SearchResult systematic_search(const DesignSpace& space, const ScoreFn& score,
                               SearchOptions options = {});
SearchResult systematic_search(const DesignSpace& space, const Evaluator& evaluator,
                               const MeritSpec& spec, SearchOptions options = {});

struct MCConfig {
  std::uint64_t n_mc = 1;
  std::uint64_t seed = 0;

  void validate() const;
};

/// Best of n_mc uniform draws (with replacement). Ties go to the earliest draw.
SearchResult montecarlo_search(const DesignSpace& space, const ScoreFn& score, const MCConfig& cfg);
SearchResult montecarlo_search(const DesignSpace& space, const Evaluator& evaluator,
                               const MeritSpec& spec, const MCConfig& cfg);

/// Result of a random search over an arbitrary-dimensional index grid.
struct GridSearchOutcome {
  std::vector<std::size_t> best_index;
  double best_merit = 0.0;
  std::uint64_t evaluations = 0;
};

using GridMeritFn = std::function<double(std::span<const std::size_t>)>;

/// Monte Carlo search over a d-dimensional grid given only its axis sizes.
GridSearchOutcome montecarlo_search_grid(std::span<const std::size_t> axis_sizes,
                                         const GridMeritFn& merit, std::uint64_t n_draws,
                                         Rng& rng);

// --- genetic algorithm ----------------------------------------------------

struct GAConfig {
  std::size_t n_c = 1000;     ///< chromosomes per generation (even)
  std::size_t gen = 10;       ///< generations including the first
  double mut_percent = 5.0;   ///< percent of each descendant generation mutated
  std::uint64_t seed = 0;
  std::uint64_t init_attempt_cap = 1'000'000;
  /// Minimum acceptance probability in proportional selection, so that
  /// zero-merit chromosomes can still become parents.
  double selection_floor = 0.05;

  void validate() const;
  std::uint64_t nominal_evaluations() const noexcept {
    return static_cast<std::uint64_t>(gen) * n_c;
  }
};

struct Chromosome {
  GridIndex genes;
  DesignPoint point;
  MeritBreakdown merit;
};

struct InitialPopulation {
  std::vector<Chromosome> chromosomes;
  std::uint64_t evaluations = 0;  ///< accepted + rejected draws
  std::uint64_t rejected = 0;
};

/// Draws uniformly until n_c chromosomes with non-zero merit are collected.
/// Throws InitializationError after init_attempt_cap draws.
InitialPopulation ga_init_population(const DesignSpace& space, const ScoreFn& score,
                                     const GAConfig& cfg, Rng& rng);

/// Merit-proportional acceptance-rejection selection: pick a chromosome
/// uniformly, accept it with probability max(merit / best merit, floor),
/// repeat until accepted. The same chromosome may be picked many times.
class ParentSelector {
 public:
  ParentSelector(std::span<const Chromosome> population, double selection_floor);

  std::size_t select(Rng& rng) const;

 private:
  std::span<const Chromosome> population_;
  double floor_;
  double max_merit_;
};

/// One-shot form of ParentSelector::select.
std::size_t ga_select_parent(std::span<const Chromosome> population, double selection_floor,
                             Rng& rng);

enum class RecombinationMode { A, B, C };

/// Gene exchange of one couple:
///   A: (Rf1 Cf2 VD2) | (Rf2 Cf1 VD1)
///   B: (Rf1 Cf1 VD2) | (Rf2 Cf2 VD1)
///   C: (Rf1 Cf2 VD1) | (Rf2 Cf1 VD2)
std::pair<GridIndex, GridIndex> recombine_genes(const GridIndex& parent1, const GridIndex& parent2,
                                                RecombinationMode mode) noexcept;

struct Offspring {
  Chromosome first;
  Chromosome second;
  RecombinationMode mode;
};

/// Picks a mode uniformly and scores both descendants (two evaluations).
Offspring ga_recombine(const Chromosome& parent1, const Chromosome& parent2,
                       const DesignSpace& space, const ScoreFn& score, Rng& rng);

/// round(n_c * mut_percent / 100).
std::size_t mutation_count(std::size_t n_c, double mut_percent) noexcept;

/// Mutates mutation_count() distinct chromosomes: one uniformly chosen gene
/// of each is redrawn uniformly from its axis and the chromosome rescored.
/// Returns the number of evaluations performed.
std::uint64_t ga_mutate(std::vector<Chromosome>& generation, double mut_percent,
                        const DesignSpace& space, const ScoreFn& score, Rng& rng);

/// Called with the generation number (1-based) and population after the
/// first generation is built and after every later one is complete.
using GenerationObserver = std::function<void(std::size_t, std::span<const Chromosome>)>;

/// Generational GA: init, then (gen - 1) rounds of selection, N_C/2 couples,
/// recombination and mutation. Returns the best chromosome of all generations.
SearchResult ga_search(const DesignSpace& space, const ScoreFn& score, const GAConfig& cfg,
                       const GenerationObserver& observer = {});
SearchResult ga_search(const DesignSpace& space, const Evaluator& evaluator, const MeritSpec& spec,
                       const GAConfig& cfg);

}  // namespace pdopt
