#pragma once

/// @file records.hpp
/// Row types of every CSV file the commands write, with their schemas.
///
/// Column names and order are part of the output format; see README.md.

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "pdopt/app/table.hpp"
#include "pdopt/circuit_model.hpp"
#include "pdopt/design_space.hpp"
#include "pdopt/merit.hpp"

namespace pdopt::app {

/// best.csv (systematic) and result.csv (search).
struct SearchRecord {
  std::string algorithm;
  std::uint64_t seed = 0;
  DesignPoint point;
  PerformanceVariables performance;
  MeritBreakdown merit;
  std::uint64_t evaluations = 0;
  std::uint64_t nominal_evaluations = 0;
  std::uint64_t init_rejections = 0;
  std::uint64_t self_pairings = 0;

  friend bool operator==(const SearchRecord&, const SearchRecord&) = default;
};

/// grid.csv: one row per grid point in enumeration order.
struct GridRow {
  std::uint64_t i_rf = 0, i_cf = 0, i_vd = 0;
  DesignPoint point;
  PerformanceVariables performance;
  MeritBreakdown merit;

  friend bool operator==(const GridRow&, const GridRow&) = default;
};

/// proj_*.csv: merit over two axes with the third held at its optimum.
struct ProjectionRow {
  double x = 0.0;
  double y = 0.0;
  double fixed = 0.0;
  double merit = 0.0;

  friend bool operator==(const ProjectionRow&, const ProjectionRow&) = default;
};

/// history.csv (GA search).
struct HistoryRow {
  std::uint64_t generation = 0;
  double generation_best = 0.0;
  double best_so_far = 0.0;

  friend bool operator==(const HistoryRow&, const HistoryRow&) = default;
};

/// calibration.csv: model value against the configured target.
struct CalibrationRow {
  std::string quantity;
  double model = 0.0;
  double target = 0.0;
  double difference = 0.0;

  friend bool operator==(const CalibrationRow&, const CalibrationRow&) = default;
};

/// runs.csv (experiment).
struct RunRow {
  std::uint64_t config_index = 0;
  std::uint64_t run_index = 0;
  std::uint64_t seed = 0;
  double epsilon = 0.0;
  double best_merit = 0.0;
  std::uint64_t evaluations = 0;
  std::uint64_t nominal_evaluations = 0;
  DesignPoint point;
  bool failed = false;

  friend bool operator==(const RunRow&, const RunRow&) = default;
};

/// runs_timing.csv.
struct RunTimingRow {
  std::uint64_t config_index = 0;
  std::uint64_t run_index = 0;
  double elapsed = 0.0;

  friend bool operator==(const RunTimingRow&, const RunTimingRow&) = default;
};

/// summary.csv: one row per sweep entry. Parameters that do not apply to the
/// algorithm are written as 0.
struct SummaryRow {
  std::uint64_t config_index = 0;
  std::string algorithm;
  std::uint64_t n_mc = 0;
  std::uint64_t n_c = 0;
  std::uint64_t gen = 0;
  double mut_percent = 0.0;
  std::uint64_t n_runs = 0;
  std::uint64_t base_seed = 0;
  std::uint64_t eval_nominal = 0;
  double eval_mean = 0.0;
  double eps95 = 0.0;
  bool censored = false;
  std::uint64_t failed_runs = 0;
  double reference_merit = 0.0;

  friend bool operator==(const SummaryRow&, const SummaryRow&) = default;
};

/// summary_timing.csv: mean and total wall-clock seconds per sweep entry.
struct SummaryTimingRow {
  std::uint64_t config_index = 0;
  double t_mean = 0.0;
  double t_total = 0.0;

  friend bool operator==(const SummaryTimingRow&, const SummaryTimingRow&) = default;
};

/// cdf.csv: F(eps) per sweep entry.
struct CdfRow {
  std::uint64_t config_index = 0;
  double epsilon = 0.0;
  double cumulative = 0.0;

  friend bool operator==(const CdfRow&, const CdfRow&) = default;
};

/// power_law.csv: one fit per algorithm and group of fixed parameters.
struct PowerLawRow {
  std::string algorithm;
  std::string scaling;  ///< n_mc or n_c
  std::string group;    ///< fixed parameters, e.g. "gen=20;mut=5"
  std::uint64_t n_points = 0;
  std::uint64_t excluded = 0;  ///< censored entries left out of the fit
  double beta = 0.0;
  double log_intercept = 0.0;
  double r_squared = 0.0;

  friend bool operator==(const PowerLawRow&, const PowerLawRow&) = default;
};

/// near_optimal.csv: every run with eps <= eps95 of its sweep entry.
struct NearOptimalRow {
  std::uint64_t config_index = 0;
  std::uint64_t run_index = 0;
  DesignPoint point;
  double merit = 0.0;
  double epsilon = 0.0;

  friend bool operator==(const NearOptimalRow&, const NearOptimalRow&) = default;
};

const Schema<SearchRecord>& search_record_schema();
const Schema<GridRow>& grid_schema();
/// Column names are the two free axes and the fixed one, e.g. ("rf", "cf", "vd").
Schema<ProjectionRow> projection_schema(std::string_view x, std::string_view y,
                                        std::string_view fixed);
const Schema<HistoryRow>& history_schema();
const Schema<CalibrationRow>& calibration_schema();
const Schema<RunRow>& run_schema();
const Schema<RunTimingRow>& run_timing_schema();
const Schema<SummaryRow>& summary_schema();
const Schema<SummaryTimingRow>& summary_timing_schema();
const Schema<CdfRow>& cdf_schema();
const Schema<PowerLawRow>& power_law_schema();
const Schema<NearOptimalRow>& near_optimal_schema();

}  // namespace pdopt::app
