#include "pdopt/app/commands.hpp"

#include <algorithm>
#include <chrono>
#include <map>
#include <nlohmann/json.hpp>
#include <ostream>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "pdopt/app/records.hpp"
#include "pdopt/errors.hpp"
#include "pdopt/optimizers.hpp"
#include "pdopt/stats.hpp"

namespace pdopt::app {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

json point_json(const DesignPoint& p) { return {{"rf", p.rf}, {"cf", p.cf}, {"vd", p.vd}}; }

json merit_json(const MeritBreakdown& m) {
  return {{"snr", m.snr}, {"bandwidth", m.bandwidth}, {"phase", m.phase}, {"global", m.global}};
}

json performance_json(const PerformanceVariables& p) {
  json j = {{"snr_db", p.snr_db},
            {"phase_margin_deg", p.phase_margin_deg},
            {"model_ok", p.model_ok}};
  j["bandwidth_hz"] = p.model_ok ? json(p.bandwidth_hz) : json(nullptr);
  return j;
}

json fixtures_json(const RunConfig& config, const CommandOptions& options) {
  return {{"config", options.config.string()},
          {"photodiode", config.photodiode_file.string()},
          {"opamp", config.opamp_file.string()},
          {"landscape_sha256", landscape_hash(config)}};
}

std::vector<ProjectionRow> projection(const Landscape& L, const GridIndex& best, int fixed_axis) {
  const auto& space = L.space();
  std::vector<ProjectionRow> rows;
  auto merit_at = [&](const GridIndex& g) {
    return global_merit(L.cached().at(g), L.merit()).global;
  };
  switch (fixed_axis) {
    case 2:  // rf x cf at the optimum vd
      for (std::size_t i = 0; i < space.rf_values().size(); ++i)
        for (std::size_t j = 0; j < space.cf_values().size(); ++j)
          rows.push_back({space.rf_values()[i], space.cf_values()[j], space.vd_values()[best.vd],
                          merit_at({i, j, best.vd})});
      break;
    case 0:  // cf x vd at the optimum rf
      for (std::size_t j = 0; j < space.cf_values().size(); ++j)
        for (std::size_t k = 0; k < space.vd_values().size(); ++k)
          rows.push_back({space.cf_values()[j], space.vd_values()[k], space.rf_values()[best.rf],
                          merit_at({best.rf, j, k})});
      break;
    default:  // rf x vd at the optimum cf
      for (std::size_t i = 0; i < space.rf_values().size(); ++i)
        for (std::size_t k = 0; k < space.vd_values().size(); ++k)
          rows.push_back({space.rf_values()[i], space.vd_values()[k], space.cf_values()[best.cf],
                          merit_at({i, best.cf, k})});
      break;
  }
  return rows;
}

std::vector<GridRow> grid_rows(const Landscape& L) {
  const auto& space = L.space();
  std::vector<GridRow> rows;
  rows.reserve(space.cardinality());
  for (std::uint64_t flat = 0; flat < space.cardinality(); ++flat) {
    const GridIndex g = space.unflatten(flat);
    GridRow row;
    row.i_rf = g.rf;
    row.i_cf = g.cf;
    row.i_vd = g.vd;
    row.point = space.at(g);
    row.performance = L.cached().at(g);
    row.merit = global_merit(row.performance, L.merit());
    rows.push_back(row);
  }
  return rows;
}

std::vector<CalibrationRow> calibration_rows(const CalibrationConfig& cal, const Landscape& L,
                                             const ReferenceResult& optimum) {
  const PerformanceVariables perf = L.circuit().evaluate(cal.point);
  const MeritBreakdown m = global_merit(perf, L.merit());
  auto row = [](std::string name, double model, double target) {
    return CalibrationRow{std::move(name), model, target, model - target};
  };
  return {
      row("point_snr_db", perf.snr_db, cal.snr_db),
      row("point_bandwidth_hz", perf.bandwidth_hz, cal.bandwidth_hz),
      row("point_phase_margin_deg", perf.phase_margin_deg, cal.phase_margin_deg),
      row("point_merit", m.global, cal.merit),
      row("optimum_snr_db", optimum.performance.snr_db, cal.snr_db),
      row("optimum_bandwidth_hz", optimum.performance.bandwidth_hz, cal.bandwidth_hz),
      row("optimum_phase_margin_deg", optimum.performance.phase_margin_deg, cal.phase_margin_deg),
      row("optimum_merit", optimum.merit.global, cal.merit),
  };
}

SearchResult run_algorithm(const AlgorithmConfig& algo, const DesignSpace& space,
                           const ScoreFn& score, std::uint64_t seed) {
  switch (algo.type) {
    case Algorithm::MonteCarlo: {
      MCConfig c = algo.mc;
      c.seed = seed;
      return montecarlo_search(space, score, c);
    }
    case Algorithm::Genetic: {
      GAConfig c = algo.ga;
      c.seed = seed;
      return ga_search(space, score, c);
    }
    case Algorithm::Systematic:
      break;
  }
  throw ConfigError("algorithm.type must be montecarlo or ga for this command");
}

std::uint64_t configured_seed(const AlgorithmConfig& algo) {
  return algo.type == Algorithm::Genetic ? algo.ga.seed : algo.mc.seed;
}

std::uint64_t nominal(const AlgorithmConfig& algo) {
  return algo.type == Algorithm::Genetic ? algo.ga.nominal_evaluations() : algo.mc.n_mc;
}

/// Sweep entries sharing every parameter except the scaling one.
std::string power_law_group(const AlgorithmConfig& algo) {
  if (algo.type != Algorithm::Genetic) return "all";
  return "gen=" + format_field(static_cast<std::uint64_t>(algo.ga.gen)) +
         ";mut=" + format_field(algo.ga.mut_percent) +
         ";floor=" + format_field(algo.ga.selection_floor);
}

double scaling_value(const AlgorithmConfig& algo) {
  return algo.type == Algorithm::Genetic ? static_cast<double>(algo.ga.n_c)
                                         : static_cast<double>(algo.mc.n_mc);
}

template <class F>
int guarded(std::ostream& err, F&& body) {
  try {
    return body();
  } catch (const ConfigError& e) {
    err << "error: invalid configuration: " << e.what() << '\n';
    return kExitConfig;
  } catch (const DomainError& e) {
    err << "error: invalid configuration: " << e.what() << '\n';
    return kExitConfig;
  } catch (const InitializationError& e) {
    err << "error: GA initialization failed: " << e.what() << '\n';
    return kExitInit;
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const ConsistencyError& e) {
    err << "error: " << e.what() << '\n';
    return kExitConsistency;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
}

void store_reference_or_warn(const CommandOptions& options, const RunConfig& config,
                             const ReferenceResult& ref, std::ostream& err) {
  const fs::path cache = reference_cache_path(options.config);
  try {
    store_reference(cache, ref, landscape_hash(config));
  } catch (const IoError& e) {
    err << "warning: reference cache not written: " << e.what() << '\n';
  }
}

}  // namespace

Landscape::Landscape(const RunConfig& config)
    : space_(config.space.build()),
      circuit_(config.photodiode, config.opamp, config.conditions),
      cached_(space_, circuit_),
      merit_(config.merit) {}

ReferenceResult compute_reference(const Landscape& landscape, unsigned threads) {
  const SearchResult r =
      systematic_search(landscape.space(), landscape.cached(), landscape.merit(), {threads});
  return {r.best_point, landscape.cached().at(r.best_index), r.best_merit, r.evaluations};
}

OutputSet run_systematic(const RunConfig& config, const Landscape& landscape,
                         const CommandOptions& options, ReferenceResult* reference_out) {
  const auto t0 = Clock::now();
  const ReferenceResult ref = compute_reference(landscape, options.threads);
  const double elapsed = seconds_since(t0);
  if (reference_out) *reference_out = ref;

  const DesignSpace& space = landscape.space();
  const GridIndex best = *space.index_of(ref.point);

  OutputSet files;
  SearchRecord rec{"systematic", 0,
                   ref.point,    ref.performance,
                   ref.merit,    ref.evaluations,
                   space.cardinality(), 0, 0};
  files.add("best.csv", write_table(search_record_schema(), {rec}));
  files.add("proj_rf_cf.csv",
            write_table(projection_schema("rf", "cf", "vd"), projection(landscape, best, 2)));
  files.add("proj_cf_vd.csv",
            write_table(projection_schema("cf", "vd", "rf"), projection(landscape, best, 0)));
  files.add("proj_rf_vd.csv",
            write_table(projection_schema("rf", "vd", "cf"), projection(landscape, best, 1)));
  if (config.output.write_grid || options.grid)
    files.add("grid.csv", write_table(grid_schema(), grid_rows(landscape)));
  if (config.calibration)
    files.add("calibration.csv",
              write_table(calibration_schema(), calibration_rows(*config.calibration, landscape, ref)));

  json summary = {{"command", "systematic"},
                  {"inputs", fixtures_json(config, options)},
                  {"cardinality", space.cardinality()},
                  {"axis_sizes",
                   {space.rf_values().size(), space.cf_values().size(), space.vd_values().size()}},
                  {"evaluations", ref.evaluations},
                  {"best",
                   {{"point", point_json(ref.point)},
                    {"index", {best.rf, best.cf, best.vd}},
                    {"performance", performance_json(ref.performance)},
                    {"merit", merit_json(ref.merit)}}},
                  {"threads", options.threads},
                  {"elapsed_s", elapsed},
                  {"files", files.names()}};
  files.add("summary.json", summary.dump(2) + "\n");
  return files;
}

OutputSet run_search(const RunConfig& config, const Landscape& landscape,
                     const CommandOptions& options) {
  const AlgorithmConfig& algo = config.algorithm;
  if (algo.type == Algorithm::Systematic)
    throw ConfigError("search needs algorithm.type montecarlo or ga");
  const std::uint64_t seed = options.seed.value_or(configured_seed(algo));

  const ScoreFn score = make_score(landscape.cached(), landscape.merit());
  const SearchResult r = run_algorithm(algo, landscape.space(), score, seed);

  OutputSet files;
  SearchRecord rec{to_string(algo.type), seed,
                   r.best_point,         landscape.cached().at(r.best_index),
                   r.best_merit,         r.evaluations,
                   r.nominal_evaluations, r.init_rejections, r.self_pairings};
  files.add("result.csv", write_table(search_record_schema(), {rec}));

  if (algo.type == Algorithm::Genetic) {
    std::vector<HistoryRow> rows;
    for (std::size_t g = 0; g < r.history.size(); ++g)
      rows.push_back({g + 1, r.generation_best[g], r.history[g]});
    files.add("history.csv", write_table(history_schema(), rows));
  }

  json params;
  if (algo.type == Algorithm::Genetic) {
    params = {{"n_c", algo.ga.n_c},
              {"gen", algo.ga.gen},
              {"mut_percent", algo.ga.mut_percent},
              {"selection_floor", algo.ga.selection_floor},
              {"init_attempt_cap", algo.ga.init_attempt_cap}};
  } else {
    params = {{"n_mc", algo.mc.n_mc}};
  }
  json summary = {{"command", "search"},
                  {"inputs", fixtures_json(config, options)},
                  {"algorithm", to_string(algo.type)},
                  {"parameters", params},
                  {"seed", seed},
                  {"evaluations", r.evaluations},
                  {"nominal_evaluations", r.nominal_evaluations},
                  {"init_rejections", r.init_rejections},
                  {"self_pairings", r.self_pairings},
                  {"best",
                   {{"point", point_json(r.best_point)},
                    {"performance", performance_json(rec.performance)},
                    {"merit", merit_json(r.best_merit)}}},
                  {"elapsed_s", r.elapsed},
                  {"files", files.names()}};
  files.add("summary.json", summary.dump(2) + "\n");
  return files;
}

OutputSet run_experiment(const RunConfig& config, const Landscape& landscape,
                         const ReferenceResult& reference, const CommandOptions& options,
                         bool reference_from_cache) {
  if (!config.experiment) throw ConfigError("the experiment command needs an experiment section");
  const ExperimentConfig& exp = *config.experiment;
  const std::uint64_t base_seed = options.seed.value_or(exp.base_seed);
  const ScoreFn score = make_score(landscape.cached(), landscape.merit());
  const auto t0 = Clock::now();

  std::vector<RunRow> runs;
  std::vector<RunTimingRow> run_times;
  std::vector<SummaryRow> summary_rows;
  std::vector<SummaryTimingRow> summary_times;
  std::vector<CdfRow> cdf;
  std::vector<NearOptimalRow> near;
  json entries = json::array();

  // group -> (N, eps95) of usable entries, plus the excluded count
  std::map<std::string, std::pair<std::vector<std::pair<double, double>>, std::uint64_t>> groups;
  std::vector<std::string> group_order;

  for (std::size_t k = 0; k < exp.sweep.size(); ++k) {
    const AlgorithmConfig& algo = exp.sweep[k];
    const ExperimentStats st = run_experiments(
        [&](std::uint64_t seed) { return run_algorithm(algo, landscape.space(), score, seed); },
        exp.n_runs, base_seed, reference.merit.global, options.threads);

    double eval_sum = 0.0, t_sum = 0.0;
    std::uint64_t failed = 0, completed = 0;
    for (const RunRecord& r : st.runs) {
      runs.push_back({k, r.run_index, r.seed, r.epsilon, r.best_merit, r.evaluations,
                      r.nominal_evaluations, r.best_point, r.failed});
      run_times.push_back({k, r.run_index, r.elapsed});
      t_sum += r.elapsed;
      if (r.failed) {
        ++failed;
        continue;
      }
      ++completed;
      eval_sum += static_cast<double>(r.evaluations);
      if (r.epsilon <= st.eps95)
        near.push_back({k, r.run_index, r.best_point, r.best_merit, r.epsilon});
    }

    SummaryRow row;
    row.config_index = k;
    row.algorithm = to_string(algo.type);
    if (algo.type == Algorithm::Genetic) {
      row.n_c = algo.ga.n_c;
      row.gen = algo.ga.gen;
      row.mut_percent = algo.ga.mut_percent;
    } else {
      row.n_mc = algo.mc.n_mc;
    }
    row.n_runs = exp.n_runs;
    row.base_seed = base_seed;
    row.eval_nominal = nominal(algo);
    row.eval_mean = completed ? eval_sum / static_cast<double>(completed) : 0.0;
    row.eps95 = st.eps95;
    row.censored = st.censored;
    row.failed_runs = failed;
    row.reference_merit = st.reference_merit;
    summary_rows.push_back(row);
    summary_times.push_back({k, t_sum / static_cast<double>(exp.n_runs), t_sum});

    for (const auto& [x, f] : cumulative_distribution(st.epsilons, exp.cdf_grid))
      cdf.push_back({k, x, f});

    const std::string group = power_law_group(algo);
    if (!groups.contains(group)) group_order.push_back(group);
    auto& [points, excluded] = groups[group];
    if (st.censored || !(st.eps95 > 0.0)) {
      ++excluded;
    } else {
      points.emplace_back(scaling_value(algo), st.eps95);
    }

    entries.push_back({{"config_index", k},
                       {"eval_nominal", row.eval_nominal},
                       {"eps95", st.eps95},
                       {"censored", st.censored},
                       {"failed_runs", failed},
                       {"t_total_s", t_sum}});
  }

  std::vector<PowerLawRow> fits;
  const Algorithm type = exp.sweep.front().type;
  for (const std::string& group : group_order) {
    const auto& [points, excluded] = groups.at(group);
    std::set<double> distinct;
    for (const auto& p : points) distinct.insert(p.first);
    if (points.size() < 3 || distinct.size() < 2) continue;
    const PowerLawFit fit = fit_power_law(points);
    fits.push_back({to_string(type), type == Algorithm::Genetic ? "n_c" : "n_mc", group,
                    fit.n_points, excluded, fit.beta, fit.log_intercept, fit.r_squared});
  }

  OutputSet files;
  files.add("runs.csv", write_table(run_schema(), runs));
  files.add("runs_timing.csv", write_table(run_timing_schema(), run_times));
  files.add("summary.csv", write_table(summary_schema(), summary_rows));
  files.add("summary_timing.csv", write_table(summary_timing_schema(), summary_times));
  files.add("cdf.csv", write_table(cdf_schema(), cdf));
  files.add("power_law.csv", write_table(power_law_schema(), fits));
  files.add("near_optimal.csv", write_table(near_optimal_schema(), near));

  json fit_json = json::array();
  for (const auto& f : fits)
    fit_json.push_back({{"group", f.group},
                        {"scaling", f.scaling},
                        {"beta", f.beta},
                        {"r_squared", f.r_squared},
                        {"n_points", f.n_points},
                        {"excluded", f.excluded}});
  json summary = {{"command", "experiment"},
                  {"inputs", fixtures_json(config, options)},
                  {"algorithm", to_string(type)},
                  {"n_runs", exp.n_runs},
                  {"base_seed", base_seed},
                  {"reference",
                   {{"point", point_json(reference.point)},
                    {"merit", merit_json(reference.merit)},
                    {"from_cache", reference_from_cache}}},
                  {"entries", entries},
                  {"power_law", fit_json},
                  {"threads", options.threads},
                  {"elapsed_s", seconds_since(t0)},
                  {"files", files.names()}};
  files.add("summary.json", summary.dump(2) + "\n");
  return files;
}

int cmd_systematic(const CommandOptions& options, std::ostream& log, std::ostream& err) {
  return guarded(err, [&] {
    const RunConfig config = load_run_config(options.config);
    const Landscape landscape(config);
    log << "systematic search over " << landscape.space().cardinality() << " points, "
        << options.threads << " thread(s)\n";
    ReferenceResult ref;
    const OutputSet files = run_systematic(config, landscape, options, &ref);
    files.commit(options.out);
    store_reference_or_warn(options, config, ref, err);
    log << "optimum rf=" << ref.point.rf << " cf=" << ref.point.cf << " vd=" << ref.point.vd
        << " merit=" << ref.merit.global << "\n";
    return static_cast<int>(kExitOk);
  });
}

int cmd_search(const CommandOptions& options, std::ostream& log, std::ostream& err) {
  return guarded(err, [&] {
    const RunConfig config = load_run_config(options.config);
    const Landscape landscape(config);
    const OutputSet files = run_search(config, landscape, options);
    files.commit(options.out);
    log << to_string(config.algorithm.type) << " search written to " << options.out.string()
        << "\n";
    return static_cast<int>(kExitOk);
  });
}

int cmd_experiment(const CommandOptions& options, std::ostream& log, std::ostream& err) {
  return guarded(err, [&] {
    const RunConfig config = load_run_config(options.config);
    if (!config.experiment)
      throw ConfigError("the experiment command needs an experiment section");
    const Landscape landscape(config);

    const std::string hash = landscape_hash(config);
    const fs::path cache = reference_cache_path(options.config);
    std::optional<ReferenceResult> ref = load_reference(cache, hash);
    const bool from_cache = ref.has_value();
    if (from_cache) {
      log << "reference optimum from " << cache.string() << "\n";
    } else {
      log << "computing reference optimum over " << landscape.space().cardinality()
          << " points\n";
      ref = compute_reference(landscape, options.threads);
      store_reference_or_warn(options, config, *ref, err);
    }

    const OutputSet files = run_experiment(config, landscape, *ref, options, from_cache);
    files.commit(options.out);
    log << config.experiment->sweep.size() << " sweep entries x " << config.experiment->n_runs
        << " runs written to " << options.out.string() << "\n";
    return static_cast<int>(kExitOk);
  });
}

}  // namespace pdopt::app
