#pragma once

/// @file commands.hpp
/// The three CLI commands as library functions.
///
/// Each run_* function computes every output file in memory and returns
/// them; the cmd_* wrappers add config loading, error reporting, the
/// reference cache and the final commit to the output directory.

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>

#include "pdopt/app/output.hpp"
#include "pdopt/app/reference_cache.hpp"
#include "pdopt/cached_evaluator.hpp"
#include "pdopt/config.hpp"

namespace pdopt::app {

enum ExitCode : int {
  kExitOk = 0,
  kExitFailure = 1,     ///< unexpected error
  kExitConfig = 2,      ///< config or fixture error
  kExitInit = 3,        ///< GA could not build a first generation
  kExitIo = 4,          ///< outputs could not be written
  kExitConsistency = 5  ///< a run beat the reference optimum
};

struct CommandOptions {
  std::filesystem::path config;
  std::filesystem::path out;
  unsigned threads = 1;
  std::optional<std::uint64_t> seed;  ///< overrides the algorithm seed / base_seed
  bool grid = false;                  ///< systematic: force grid.csv
};

/// The circuit landscape of a config with its per-cell cache.
class Landscape {
 public:
  explicit Landscape(const RunConfig& config);

  const DesignSpace& space() const noexcept { return space_; }
  const CircuitEvaluator& circuit() const noexcept { return circuit_; }
  const CachedEvaluator& cached() const noexcept { return cached_; }
  const MeritSpec& merit() const noexcept { return merit_; }

 private:
  DesignSpace space_;
  CircuitEvaluator circuit_;
  CachedEvaluator cached_;
  MeritSpec merit_;
};

/// Exhaustive search on the landscape, as stored in the reference cache.
ReferenceResult compute_reference(const Landscape& landscape, unsigned threads);

/// files: best.csv, proj_rf_cf.csv, proj_cf_vd.csv, proj_rf_vd.csv,
/// summary.json, optionally grid.csv and calibration.csv.
OutputSet run_systematic(const RunConfig& config, const Landscape& landscape,
                         const CommandOptions& options, ReferenceResult* reference_out = nullptr);

/// files: result.csv, summary.json and, for the GA, history.csv.
OutputSet run_search(const RunConfig& config, const Landscape& landscape,
                     const CommandOptions& options);

/// files: runs.csv, runs_timing.csv, summary.csv, summary_timing.csv,
/// cdf.csv, power_law.csv, near_optimal.csv, summary.json.
OutputSet run_experiment(const RunConfig& config, const Landscape& landscape,
                         const ReferenceResult& reference, const CommandOptions& options,
                         bool reference_from_cache = false);

int cmd_systematic(const CommandOptions& options, std::ostream& log, std::ostream& err);
int cmd_search(const CommandOptions& options, std::ostream& log, std::ostream& err);
int cmd_experiment(const CommandOptions& options, std::ostream& log, std::ostream& err);

}  // namespace pdopt::app
