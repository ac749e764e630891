#include <benchmark/benchmark.h>

#include "pdopt/cached_evaluator.hpp"
#include "pdopt/config.hpp"
#include "pdopt/merit.hpp"
#include "pdopt/optimizers.hpp"
#include "pdopt/stats.hpp"

using namespace pdopt;

namespace {

const RunConfig& example() {
  static const RunConfig config = load_run_config(PDOPT_DATA_DIR "/example.yaml");
  return config;
}

struct Landscape {
  DesignSpace space = example().space.build();
  CircuitEvaluator circuit{example().photodiode, example().opamp, example().conditions};
  CachedEvaluator cached{space, circuit};
  ScoreFn score;

  Landscape() {
    cached.prefill();
    score = make_score(cached, example().merit);
  }
};

const Landscape& landscape() {
  static const Landscape land;
  return land;
}

void BM_EvaluatePerformance(benchmark::State& state) {
  const auto& c = example();
  const DesignPoint p{620e3, 3.6e-12, 14.79};
  for (auto _ : state) benchmark::DoNotOptimize(evaluate_performance(p, c.photodiode, c.opamp, c.conditions));
}
BENCHMARK(BM_EvaluatePerformance);

void BM_Bandwidth(benchmark::State& state) {
  const auto& c = example();
  const DesignPoint p{620e3, 3.6e-12, 14.79};
  for (auto _ : state) benchmark::DoNotOptimize(bandwidth(p, c.photodiode, c.opamp));
}
BENCHMARK(BM_Bandwidth);

void BM_GlobalMerit(benchmark::State& state) {
  const PerformanceVariables perf{71.0, 22010.0, 80.0, true};
  for (auto _ : state) benchmark::DoNotOptimize(global_merit(perf, example().merit));
}
BENCHMARK(BM_GlobalMerit);

void BM_CachedScore(benchmark::State& state) {
  const auto& land = landscape();
  Rng rng(1);
  for (auto _ : state) benchmark::DoNotOptimize(land.score(land.space.sample_uniform(rng)));
}
BENCHMARK(BM_CachedScore);

void BM_MonteCarlo(benchmark::State& state) {
  const auto& land = landscape();
  std::uint64_t seed = 0;
  for (auto _ : state)
    benchmark::DoNotOptimize(montecarlo_search(land.space, land.score, {static_cast<std::uint64_t>(state.range(0)), ++seed}));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_MonteCarlo)->Arg(1000)->Arg(10000);

void BM_Genetic(benchmark::State& state) {
  const auto& land = landscape();
  GAConfig cfg;
  cfg.n_c = static_cast<std::size_t>(state.range(0));
  cfg.gen = 10;
  for (auto _ : state) {
    ++cfg.seed;
    benchmark::DoNotOptimize(ga_search(land.space, land.score, cfg));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0) * 10);
}
BENCHMARK(BM_Genetic)->Arg(100)->Arg(1000);

void BM_SystematicCached(benchmark::State& state) {
  const auto& land = landscape();
  for (auto _ : state) benchmark::DoNotOptimize(systematic_search(land.space, land.score));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(land.space.cardinality()));
}
BENCHMARK(BM_SystematicCached)->Unit(benchmark::kMillisecond);

void BM_Epsilon95(benchmark::State& state) {
  Rng rng(3);
  std::uniform_real_distribution<double> u(0.0, 100.0);
  std::vector<double> eps(static_cast<std::size_t>(state.range(0)));
  for (auto& e : eps) e = u(rng);
  for (auto _ : state) benchmark::DoNotOptimize(epsilon95(eps));
}
BENCHMARK(BM_Epsilon95)->Arg(1000);

}  // namespace
BENCHMARK_MAIN();
