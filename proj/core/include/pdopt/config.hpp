#pragma once

/// @file config.hpp
/// Run-config and component parameter files (YAML).
///
/// Every mapping is checked against its allowed key set; unknown or missing
/// keys raise ConfigError naming the offending key. Physical quantities are
/// in SI base units. Relative fixture paths resolve against the directory of
/// the run-config file.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "pdopt/circuit_model.hpp"
#include "pdopt/design_space.hpp"
#include "pdopt/merit.hpp"
#include "pdopt/optimizers.hpp"

namespace pdopt {

struct DesignSpaceConfig {
  ESeriesSpec rf;
  ESeriesSpec cf;
  /// Explicit axis values; when non-empty they replace the series above.
  std::vector<double> rf_values;
  std::vector<double> cf_values;
  double vd_min = 0.0;
  double vd_max = 1.0;
  std::size_t vd_count = 2;

  DesignSpace build() const;
};

enum class Algorithm { Systematic, MonteCarlo, Genetic };

std::string to_string(Algorithm a);

struct AlgorithmConfig {
  Algorithm type = Algorithm::Systematic;
  MCConfig mc;
  GAConfig ga;
};

struct ExperimentConfig {
  std::size_t n_runs = 1;
  std::uint64_t base_seed = 0;
  /// One entry per summary row; each is the algorithm section with the
  /// listed keys overridden.
  std::vector<AlgorithmConfig> sweep;
  /// Abscissae of the exported F(eps) curves, percent.
  std::vector<double> cdf_grid;
};

struct CalibrationConfig {
  DesignPoint point;
  double snr_db = 0.0;
  double bandwidth_hz = 0.0;
  double phase_margin_deg = 0.0;
  double merit = 0.0;
};

struct OutputConfig {
  bool write_grid = false;
};

struct RunConfig {
  std::filesystem::path source;
  DesignSpaceConfig space;
  std::filesystem::path photodiode_file;
  std::filesystem::path opamp_file;
  PhotodiodeParams photodiode;
  OpAmpParams opamp;
  OperatingConditions conditions;
  MeritSpec merit;
  AlgorithmConfig algorithm;
  std::optional<ExperimentConfig> experiment;
  std::optional<CalibrationConfig> calibration;
  OutputConfig output;
};

PhotodiodeParams load_photodiode(const std::filesystem::path& file);
OpAmpParams load_opamp(const std::filesystem::path& file);

/// Parses and validates the run config and the fixture files it names.
RunConfig load_run_config(const std::filesystem::path& file);

/// Same, from in-memory YAML; relative paths resolve against `base_dir`.
RunConfig parse_run_config(const std::string& yaml, const std::filesystem::path& base_dir);

/// Deterministic text rendering of every input that determines the merit
/// landscape (axes, fixtures, conditions, merit spec). Used for cache keys.
std::string landscape_fingerprint(const RunConfig& config);

}  // namespace pdopt
