#include "pdopt/config.hpp"

#include <yaml-cpp/yaml.h>

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <initializer_list>
#include <sstream>
#include <string_view>

#include "pdopt/errors.hpp"

namespace pdopt {
namespace {

namespace fs = std::filesystem;

// A YAML mapping plus the dotted path used in error messages.
struct Section {
  YAML::Node node;
  std::string path;

  Section child(const std::string& key) const {
    YAML::Node n = node[key];
    if (!n) throw ConfigError(path + ": missing key '" + key + "'");
    return {n, path.empty() ? key : path + "." + key};
  }

  std::optional<Section> optional_child(const std::string& key) const {
    YAML::Node n = node[key];
    if (!n) return std::nullopt;
    return Section{n, path.empty() ? key : path + "." + key};
  }

  void require_map(std::initializer_list<std::string_view> allowed) const {
    if (!node.IsMap()) throw ConfigError((path.empty() ? "<root>" : path) + ": expected a mapping");
    for (const auto& kv : node) {
      const auto key = kv.first.as<std::string>();
      if (std::find(allowed.begin(), allowed.end(), key) == allowed.end())
        throw ConfigError((path.empty() ? "<root>" : path) + ": unknown key '" + key + "'");
    }
  }

  template <class T>
  T as() const {
    try {
      return node.as<T>();
    } catch (const YAML::Exception&) {
      throw ConfigError(path + ": value has the wrong type");
    }
  }

  template <class T>
  T get(const std::string& key) const {
    return child(key).as<T>();
  }

  template <class T>
  T get_or(const std::string& key, T fallback) const {
    auto c = optional_child(key);
    return c ? c->as<T>() : fallback;
  }
};

Section load_yaml_file(const fs::path& file) {
  std::ifstream in(file);
  if (!in) throw ConfigError("cannot open '" + file.string() + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return {YAML::Load(buf.str()), ""};
  } catch (const YAML::Exception& e) {
    throw ConfigError("'" + file.string() + "': " + e.what());
  }
}

ESeriesSpec parse_series_spec(const Section& s) {
  s.require_map({"series", "decade_min", "decade_max"});
  const auto name = s.get<std::string>("series");
  const auto series = parse_series(name);
  if (!series) throw ConfigError(s.path + ".series: unknown series '" + name + "'");
  ESeriesSpec spec{*series, s.get<int>("decade_min"), s.get<int>("decade_max")};
  if (spec.decade_min >= spec.decade_max)
    throw ConfigError(s.path + ": decade_min must be < decade_max");
  return spec;
}

// Either an E-series decade range or an explicit `values` list.
void parse_component_axis(const Section& s, ESeriesSpec& spec, std::vector<double>& values) {
  if (s.node.IsMap() && s.node["values"]) {
    s.require_map({"values"});
    values = s.get<std::vector<double>>("values");
    if (values.empty()) throw ConfigError(s.path + ".values: empty list");
    return;
  }
  spec = parse_series_spec(s);
}

DesignSpaceConfig parse_space(const Section& s) {
  s.require_map({"rf", "cf", "vd"});
  DesignSpaceConfig cfg;
  parse_component_axis(s.child("rf"), cfg.rf, cfg.rf_values);
  parse_component_axis(s.child("cf"), cfg.cf, cfg.cf_values);
  const Section vd = s.child("vd");
  vd.require_map({"min", "max", "count"});
  cfg.vd_min = vd.get<double>("min");
  cfg.vd_max = vd.get<double>("max");
  cfg.vd_count = vd.get<std::size_t>("count");
  return cfg;
}

OperatingConditions parse_conditions(const Section& s) {
  s.require_map({"min_irradiance", "temperature", "noise_integration_decades"});
  OperatingConditions c;
  c.min_irradiance = s.get<double>("min_irradiance");
  c.temperature = s.get<double>("temperature");
  c.noise_integration_decades = s.get_or<double>("noise_integration_decades", 0.0);
  c.validate();
  return c;
}

UnilateralSpec parse_unilateral(const Section& s) {
  s.require_map({"x_min", "x_opt", "direction"});
  UnilateralSpec u;
  u.x_min = s.get<double>("x_min");
  u.x_opt = s.get<double>("x_opt");
  const auto dir = s.get_or<std::string>("direction", "lower");
  if (dir == "lower") u.direction = BoundDirection::Lower;
  else if (dir == "upper") u.direction = BoundDirection::Upper;
  else throw ConfigError(s.path + ".direction: expected 'lower' or 'upper'");
  try {
    u.validate();
  } catch (const ConfigError& e) {
    throw ConfigError(s.path + ": " + e.what());
  }
  return u;
}

BilateralSpec parse_bilateral(const Section& s) {
  s.require_map({"x_min", "x_opt", "x_max"});
  BilateralSpec b{s.get<double>("x_min"), s.get<double>("x_opt"), s.get<double>("x_max")};
  try {
    b.validate();
  } catch (const ConfigError& e) {
    throw ConfigError(s.path + ": " + e.what());
  }
  return b;
}

MeritSpec parse_merit(const Section& s) {
  s.require_map({"snr", "bandwidth", "phase_margin"});
  return {parse_unilateral(s.child("snr")), parse_bilateral(s.child("bandwidth")),
          parse_unilateral(s.child("phase_margin"))};
}

Algorithm parse_algorithm_type(const Section& s) {
  const auto name = s.as<std::string>();
  if (name == "systematic") return Algorithm::Systematic;
  if (name == "montecarlo") return Algorithm::MonteCarlo;
  if (name == "ga") return Algorithm::Genetic;
  throw ConfigError(s.path + ": expected systematic, montecarlo or ga");
}

// Applies the keys present in `s` on top of `base`; `with_seed` controls
// whether a seed key is accepted (sweep entries take seeds from base_seed).
AlgorithmConfig apply_algorithm_keys(const Section& s, AlgorithmConfig cfg, bool with_seed) {
  switch (cfg.type) {
    case Algorithm::Systematic:
      s.require_map({"type"});
      break;
    case Algorithm::MonteCarlo:
      if (with_seed) s.require_map({"type", "seed", "n_mc"});
      else s.require_map({"n_mc"});
      cfg.mc.n_mc = s.get_or<std::uint64_t>("n_mc", cfg.mc.n_mc);
      if (with_seed) cfg.mc.seed = s.get_or<std::uint64_t>("seed", cfg.mc.seed);
      cfg.mc.validate();
      break;
    case Algorithm::Genetic:
      if (with_seed)
        s.require_map({"type", "seed", "n_c", "gen", "mut_percent", "init_attempt_cap", "selection_floor"});
      else
        s.require_map({"n_c", "gen", "mut_percent", "init_attempt_cap", "selection_floor"});
      cfg.ga.n_c = s.get_or<std::size_t>("n_c", cfg.ga.n_c);
      cfg.ga.gen = s.get_or<std::size_t>("gen", cfg.ga.gen);
      cfg.ga.mut_percent = s.get_or<double>("mut_percent", cfg.ga.mut_percent);
      cfg.ga.init_attempt_cap = s.get_or<std::uint64_t>("init_attempt_cap", cfg.ga.init_attempt_cap);
      cfg.ga.selection_floor = s.get_or<double>("selection_floor", cfg.ga.selection_floor);
      if (with_seed) cfg.ga.seed = s.get_or<std::uint64_t>("seed", cfg.ga.seed);
      try {
        cfg.ga.validate();
      } catch (const ConfigError& e) {
        throw ConfigError(s.path + ": " + e.what());
      }
      break;
  }
  return cfg;
}

AlgorithmConfig parse_algorithm(const Section& s) {
  if (!s.node.IsMap()) throw ConfigError(s.path + ": expected a mapping");
  AlgorithmConfig cfg;
  cfg.type = parse_algorithm_type(s.child("type"));
  return apply_algorithm_keys(s, cfg, true);
}

std::vector<double> parse_grid(const Section& s) {
  s.require_map({"start", "stop", "step"});
  const double start = s.get<double>("start");
  const double stop = s.get<double>("stop");
  const double step = s.get<double>("step");
  if (!(step > 0.0) || !(stop >= start)) throw ConfigError(s.path + ": need step > 0 and stop >= start");
  std::vector<double> grid;
  const auto n = static_cast<std::size_t>(std::llround((stop - start) / step));
  for (std::size_t i = 0; i <= n; ++i) grid.push_back(start + step * static_cast<double>(i));
  grid.back() = stop;
  return grid;
}

ExperimentConfig parse_experiment(const Section& s, const AlgorithmConfig& base) {
  s.require_map({"n_runs", "base_seed", "sweep", "cdf_grid"});
  if (base.type == Algorithm::Systematic)
    throw ConfigError(s.path + ": experiments need a montecarlo or ga algorithm section");
  ExperimentConfig e;
  e.n_runs = s.get<std::size_t>("n_runs");
  if (e.n_runs < 1) throw ConfigError(s.path + ".n_runs: must be >= 1");
  e.base_seed = s.get<std::uint64_t>("base_seed");
  if (auto sweep = s.optional_child("sweep")) {
    if (!sweep->node.IsSequence()) throw ConfigError(sweep->path + ": expected a list");
    for (std::size_t i = 0; i < sweep->node.size(); ++i)
      e.sweep.push_back(apply_algorithm_keys({sweep->node[i], sweep->path + "[" + std::to_string(i) + "]"},
                                             base, false));
  }
  if (e.sweep.empty()) e.sweep.push_back(base);
  if (auto grid = s.optional_child("cdf_grid")) e.cdf_grid = parse_grid(*grid);
  else e.cdf_grid = parse_grid({YAML::Load("{start: 0, stop: 100, step: 0.5}"), s.path + ".cdf_grid"});
  return e;
}

CalibrationConfig parse_calibration(const Section& s) {
  s.require_map({"point", "expected"});
  const Section p = s.child("point");
  p.require_map({"rf", "cf", "vd"});
  const Section x = s.child("expected");
  x.require_map({"snr_db", "bandwidth_hz", "phase_margin_deg", "merit"});
  CalibrationConfig c;
  c.point = {p.get<double>("rf"), p.get<double>("cf"), p.get<double>("vd")};
  c.snr_db = x.get<double>("snr_db");
  c.bandwidth_hz = x.get<double>("bandwidth_hz");
  c.phase_margin_deg = x.get<double>("phase_margin_deg");
  c.merit = x.get<double>("merit");
  return c;
}

fs::path resolve(const fs::path& base_dir, const fs::path& p) {
  return p.is_absolute() ? p : base_dir / p;
}

RunConfig parse_root(const Section& root, const fs::path& base_dir) {
  root.require_map({"design_space", "fixtures", "merit", "algorithm", "experiment", "calibration", "output"});
  RunConfig cfg;
  cfg.space = parse_space(root.child("design_space"));

  const Section fx = root.child("fixtures");
  fx.require_map({"photodiode", "opamp", "conditions"});
  cfg.photodiode_file = resolve(base_dir, fx.get<std::string>("photodiode"));
  cfg.opamp_file = resolve(base_dir, fx.get<std::string>("opamp"));
  cfg.photodiode = load_photodiode(cfg.photodiode_file);
  cfg.opamp = load_opamp(cfg.opamp_file);
  cfg.conditions = parse_conditions(fx.child("conditions"));

  cfg.merit = parse_merit(root.child("merit"));
  cfg.algorithm = parse_algorithm(root.child("algorithm"));
  if (auto e = root.optional_child("experiment")) cfg.experiment = parse_experiment(*e, cfg.algorithm);
  if (auto c = root.optional_child("calibration")) cfg.calibration = parse_calibration(*c);
  if (auto o = root.optional_child("output")) {
    o->require_map({"grid"});
    cfg.output.write_grid = o->get_or<bool>("grid", false);
  }

  try {
    (void)cfg.space.build();
  } catch (const DomainError& e) {
    throw ConfigError(std::string("design_space: ") + e.what());
  }
  if (cfg.space.vd_max > cfg.photodiode.v_reverse_max)
    throw ConfigError("design_space.vd.max exceeds the photodiode v_reverse_max");
  return cfg;
}

void append(std::ostringstream& out, const char* key, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  out << key << '=' << buf << '\n';
}

}  // namespace

DesignSpace DesignSpaceConfig::build() const {
  return DesignSpace(rf_values.empty() ? e_series_values(rf) : rf_values,
                     cf_values.empty() ? e_series_values(cf) : cf_values,
                     discretize_bias(vd_min, vd_max, vd_count));
}

std::string to_string(Algorithm a) {
  switch (a) {
    case Algorithm::Systematic: return "systematic";
    case Algorithm::MonteCarlo: return "montecarlo";
    case Algorithm::Genetic: return "ga";
  }
  return "?";
}

PhotodiodeParams load_photodiode(const fs::path& file) {
  Section s = load_yaml_file(file);
  s.path = file.filename().string();
  s.require_map({"part", "notes", "responsivity", "active_area", "dark_current", "v_reverse_max", "cv_curve"});
  PhotodiodeParams pd;
  pd.responsivity = s.get<double>("responsivity");
  pd.active_area = s.get<double>("active_area");
  pd.dark_current = s.get<double>("dark_current");
  pd.v_reverse_max = s.get<double>("v_reverse_max");
  const Section curve = s.child("cv_curve");
  if (!curve.node.IsSequence()) throw ConfigError(curve.path + ": expected a list of [volts, farads]");
  for (std::size_t i = 0; i < curve.node.size(); ++i) {
    const Section row{curve.node[i], curve.path + "[" + std::to_string(i) + "]"};
    if (!row.node.IsSequence() || row.node.size() != 2)
      throw ConfigError(row.path + ": expected [volts, farads]");
    pd.cv_curve.push_back({Section{row.node[0], row.path}.as<double>(),
                           Section{row.node[1], row.path}.as<double>()});
  }
  try {
    pd.validate();
  } catch (const ConfigError& e) {
    throw ConfigError(s.path + ": " + e.what());
  }
  return pd;
}

OpAmpParams load_opamp(const fs::path& file) {
  Section s = load_yaml_file(file);
  s.path = file.filename().string();
  s.require_map({"part", "notes", "dc_gain", "gbw", "voltage_noise_density", "current_noise_density",
                 "input_capacitance"});
  OpAmpParams oa;
  oa.dc_gain = s.get<double>("dc_gain");
  oa.gbw = s.get<double>("gbw");
  oa.voltage_noise_density = s.get<double>("voltage_noise_density");
  oa.current_noise_density = s.get<double>("current_noise_density");
  oa.input_capacitance = s.get<double>("input_capacitance");
  try {
    oa.validate();
  } catch (const ConfigError& e) {
    throw ConfigError(s.path + ": " + e.what());
  }
  return oa;
}

RunConfig load_run_config(const fs::path& file) {
  Section root = load_yaml_file(file);
  RunConfig cfg = parse_root(root, file.parent_path());
  cfg.source = file;
  return cfg;
}

RunConfig parse_run_config(const std::string& yaml, const fs::path& base_dir) {
  Section root;
  try {
    root = {YAML::Load(yaml), ""};
  } catch (const YAML::Exception& e) {
    throw ConfigError(std::string("run config: ") + e.what());
  }
  return parse_root(root, base_dir);
}

std::string landscape_fingerprint(const RunConfig& config) {
  std::ostringstream out;
  const DesignSpace space = config.space.build();
  for (double v : space.rf_values()) append(out, "rf", v);
  for (double v : space.cf_values()) append(out, "cf", v);
  for (double v : space.vd_values()) append(out, "vd", v);

  const auto& pd = config.photodiode;
  append(out, "pd.responsivity", pd.responsivity);
  append(out, "pd.active_area", pd.active_area);
  append(out, "pd.dark_current", pd.dark_current);
  append(out, "pd.v_reverse_max", pd.v_reverse_max);
  for (const auto& p : pd.cv_curve) {
    append(out, "pd.cv.v", p.reverse_voltage);
    append(out, "pd.cv.c", p.capacitance);
  }
  const auto& oa = config.opamp;
  append(out, "oa.dc_gain", oa.dc_gain);
  append(out, "oa.gbw", oa.gbw);
  append(out, "oa.en", oa.voltage_noise_density);
  append(out, "oa.in", oa.current_noise_density);
  append(out, "oa.cin", oa.input_capacitance);
  const auto& c = config.conditions;
  append(out, "cond.irradiance", c.min_irradiance);
  append(out, "cond.temperature", c.temperature);
  append(out, "cond.decades", c.noise_integration_decades);
  const auto& m = config.merit;
  append(out, "merit.snr.min", m.snr.x_min);
  append(out, "merit.snr.opt", m.snr.x_opt);
  append(out, "merit.snr.dir", m.snr.direction == BoundDirection::Lower ? 0 : 1);
  append(out, "merit.b.min", m.bandwidth.x_min);
  append(out, "merit.b.opt", m.bandwidth.x_opt);
  append(out, "merit.b.max", m.bandwidth.x_max);
  append(out, "merit.pm.min", m.phase_margin.x_min);
  append(out, "merit.pm.opt", m.phase_margin.x_opt);
  append(out, "merit.pm.dir", m.phase_margin.direction == BoundDirection::Lower ? 0 : 1);
  return out.str();
}

}  // namespace pdopt
