#include "pdopt/app/records.hpp"

namespace pdopt::app {

namespace {

template <class Row>
void add_point(Schema<Row>& s) {
  s.push_back(column<Row>("rf", [](auto& r) -> auto& { return r.point.rf; }));
  s.push_back(column<Row>("cf", [](auto& r) -> auto& { return r.point.cf; }));
  s.push_back(column<Row>("vd", [](auto& r) -> auto& { return r.point.vd; }));
}

template <class Row>
void add_performance(Schema<Row>& s) {
  s.push_back(column<Row>("snr_db", [](auto& r) -> auto& { return r.performance.snr_db; }));
  s.push_back(
      column<Row>("bandwidth_hz", [](auto& r) -> auto& { return r.performance.bandwidth_hz; }));
  s.push_back(column<Row>("phase_margin_deg",
                          [](auto& r) -> auto& { return r.performance.phase_margin_deg; }));
  s.push_back(column<Row>("model_ok", [](auto& r) -> auto& { return r.performance.model_ok; }));
}

template <class Row>
void add_merit(Schema<Row>& s) {
  s.push_back(column<Row>("m_snr", [](auto& r) -> auto& { return r.merit.snr; }));
  s.push_back(column<Row>("m_bandwidth", [](auto& r) -> auto& { return r.merit.bandwidth; }));
  s.push_back(column<Row>("m_phase", [](auto& r) -> auto& { return r.merit.phase; }));
  s.push_back(column<Row>("merit", [](auto& r) -> auto& { return r.merit.global; }));
}

}  // namespace

const Schema<SearchRecord>& search_record_schema() {
  static const Schema<SearchRecord> schema = [] {
    using R = SearchRecord;
    Schema<R> s;
    s.push_back(column<R>("algorithm", [](auto& r) -> auto& { return r.algorithm; }));
    s.push_back(column<R>("seed", [](auto& r) -> auto& { return r.seed; }));
    add_point(s);
    add_performance(s);
    add_merit(s);
    s.push_back(column<R>("evaluations", [](auto& r) -> auto& { return r.evaluations; }));
    s.push_back(
        column<R>("nominal_evaluations", [](auto& r) -> auto& { return r.nominal_evaluations; }));
    s.push_back(column<R>("init_rejections", [](auto& r) -> auto& { return r.init_rejections; }));
    s.push_back(column<R>("self_pairings", [](auto& r) -> auto& { return r.self_pairings; }));
    return s;
  }();
  return schema;
}

const Schema<GridRow>& grid_schema() {
  static const Schema<GridRow> schema = [] {
    using R = GridRow;
    Schema<R> s;
    s.push_back(column<R>("i_rf", [](auto& r) -> auto& { return r.i_rf; }));
    s.push_back(column<R>("i_cf", [](auto& r) -> auto& { return r.i_cf; }));
    s.push_back(column<R>("i_vd", [](auto& r) -> auto& { return r.i_vd; }));
    add_point(s);
    add_performance(s);
    add_merit(s);
    return s;
  }();
  return schema;
}

Schema<ProjectionRow> projection_schema(std::string_view x, std::string_view y,
                                        std::string_view fixed) {
  using R = ProjectionRow;
  Schema<R> s;
  s.push_back(column<R>(std::string(x), [](auto& r) -> auto& { return r.x; }));
  s.push_back(column<R>(std::string(y), [](auto& r) -> auto& { return r.y; }));
  s.push_back(column<R>(std::string(fixed), [](auto& r) -> auto& { return r.fixed; }));
  s.push_back(column<R>("merit", [](auto& r) -> auto& { return r.merit; }));
  return s;
}

const Schema<HistoryRow>& history_schema() {
  static const Schema<HistoryRow> schema = [] {
    using R = HistoryRow;
    return Schema<R>{
        column<R>("generation", [](auto& r) -> auto& { return r.generation; }),
        column<R>("generation_best", [](auto& r) -> auto& { return r.generation_best; }),
        column<R>("best_so_far", [](auto& r) -> auto& { return r.best_so_far; }),
    };
  }();
  return schema;
}

const Schema<CalibrationRow>& calibration_schema() {
  static const Schema<CalibrationRow> schema = [] {
    using R = CalibrationRow;
    return Schema<R>{
        column<R>("quantity", [](auto& r) -> auto& { return r.quantity; }),
        column<R>("model", [](auto& r) -> auto& { return r.model; }),
        column<R>("target", [](auto& r) -> auto& { return r.target; }),
        column<R>("difference", [](auto& r) -> auto& { return r.difference; }),
    };
  }();
  return schema;
}

const Schema<RunRow>& run_schema() {
  static const Schema<RunRow> schema = [] {
    using R = RunRow;
    Schema<R> s{
        column<R>("config_index", [](auto& r) -> auto& { return r.config_index; }),
        column<R>("run_index", [](auto& r) -> auto& { return r.run_index; }),
        column<R>("seed", [](auto& r) -> auto& { return r.seed; }),
        column<R>("epsilon", [](auto& r) -> auto& { return r.epsilon; }),
        column<R>("best_merit", [](auto& r) -> auto& { return r.best_merit; }),
        column<R>("evaluations", [](auto& r) -> auto& { return r.evaluations; }),
        column<R>("nominal_evaluations", [](auto& r) -> auto& { return r.nominal_evaluations; }),
    };
    add_point(s);
    s.push_back(column<R>("failed", [](auto& r) -> auto& { return r.failed; }));
    return s;
  }();
  return schema;
}

const Schema<RunTimingRow>& run_timing_schema() {
  static const Schema<RunTimingRow> schema = [] {
    using R = RunTimingRow;
    return Schema<R>{
        column<R>("config_index", [](auto& r) -> auto& { return r.config_index; }),
        column<R>("run_index", [](auto& r) -> auto& { return r.run_index; }),
        column<R>("elapsed", [](auto& r) -> auto& { return r.elapsed; }),
    };
  }();
  return schema;
}

const Schema<SummaryRow>& summary_schema() {
  static const Schema<SummaryRow> schema = [] {
    using R = SummaryRow;
    return Schema<R>{
        column<R>("config_index", [](auto& r) -> auto& { return r.config_index; }),
        column<R>("algorithm", [](auto& r) -> auto& { return r.algorithm; }),
        column<R>("n_mc", [](auto& r) -> auto& { return r.n_mc; }),
        column<R>("n_c", [](auto& r) -> auto& { return r.n_c; }),
        column<R>("gen", [](auto& r) -> auto& { return r.gen; }),
        column<R>("mut_percent", [](auto& r) -> auto& { return r.mut_percent; }),
        column<R>("n_runs", [](auto& r) -> auto& { return r.n_runs; }),
        column<R>("base_seed", [](auto& r) -> auto& { return r.base_seed; }),
        column<R>("eval_nominal", [](auto& r) -> auto& { return r.eval_nominal; }),
        column<R>("eval_mean", [](auto& r) -> auto& { return r.eval_mean; }),
        column<R>("eps95", [](auto& r) -> auto& { return r.eps95; }),
        column<R>("censored", [](auto& r) -> auto& { return r.censored; }),
        column<R>("failed_runs", [](auto& r) -> auto& { return r.failed_runs; }),
        column<R>("reference_merit", [](auto& r) -> auto& { return r.reference_merit; }),
    };
  }();
  return schema;
}

const Schema<SummaryTimingRow>& summary_timing_schema() {
  static const Schema<SummaryTimingRow> schema = [] {
    using R = SummaryTimingRow;
    return Schema<R>{
        column<R>("config_index", [](auto& r) -> auto& { return r.config_index; }),
        column<R>("t_mean", [](auto& r) -> auto& { return r.t_mean; }),
        column<R>("t_total", [](auto& r) -> auto& { return r.t_total; }),
    };
  }();
  return schema;
}

const Schema<CdfRow>& cdf_schema() {
  static const Schema<CdfRow> schema = [] {
    using R = CdfRow;
    return Schema<R>{
        column<R>("config_index", [](auto& r) -> auto& { return r.config_index; }),
        column<R>("epsilon", [](auto& r) -> auto& { return r.epsilon; }),
        column<R>("F", [](auto& r) -> auto& { return r.cumulative; }),
    };
  }();
  return schema;
}

const Schema<PowerLawRow>& power_law_schema() {
  static const Schema<PowerLawRow> schema = [] {
    using R = PowerLawRow;
    return Schema<R>{
        column<R>("algorithm", [](auto& r) -> auto& { return r.algorithm; }),
        column<R>("scaling", [](auto& r) -> auto& { return r.scaling; }),
        column<R>("group", [](auto& r) -> auto& { return r.group; }),
        column<R>("n_points", [](auto& r) -> auto& { return r.n_points; }),
        column<R>("excluded", [](auto& r) -> auto& { return r.excluded; }),
        column<R>("beta", [](auto& r) -> auto& { return r.beta; }),
        column<R>("log_intercept", [](auto& r) -> auto& { return r.log_intercept; }),
        column<R>("r_squared", [](auto& r) -> auto& { return r.r_squared; }),
    };
  }();
  return schema;
}

const Schema<NearOptimalRow>& near_optimal_schema() {
  static const Schema<NearOptimalRow> schema = [] {
    using R = NearOptimalRow;
    Schema<R> s{
        column<R>("config_index", [](auto& r) -> auto& { return r.config_index; }),
        column<R>("run_index", [](auto& r) -> auto& { return r.run_index; }),
    };
    add_point(s);
    s.push_back(column<R>("merit", [](auto& r) -> auto& { return r.merit; }));
    s.push_back(column<R>("epsilon", [](auto& r) -> auto& { return r.epsilon; }));
    return s;
  }();
  return schema;
}

}  // namespace pdopt::app
