#include "pdopt/circuit_model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "pdopt/errors.hpp"

namespace pdopt {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void require_positive(double value, const char* what) {
  if (!(value > 0.0) || !std::isfinite(value))
    throw ConfigError(std::string(what) + " must be a positive finite number");
}

double upper_search_frequency(const CircuitState& c) { return 10.0 * c.gbw; }

// Scans f_k = f_start * 10^(k / ppd) upward and returns the first bracket
// [f_{k-1}, f_k] where `below(f)` becomes true, refined by bisection in
// log-frequency. nullopt when it never becomes true; a bracket with
// lo == hi == f_start when it is already true at the first sample.
template <class Below>
std::optional<std::pair<double, double>> first_crossing(double f_start, double f_end, Below below) {
  const double decades = std::log10(f_end / f_start);
  const auto steps = static_cast<long>(std::ceil(decades * model::kBracketPointsPerDecade));
  if (below(f_start)) return std::pair{f_start, f_start};

  double lo = f_start;
  for (long k = 1; k <= steps; ++k) {
    const double hi = std::min(f_end, f_start * std::pow(10.0, k / model::kBracketPointsPerDecade));
    if (below(hi)) {
      double a = lo;
      double b = hi;
      while ((b - a) > model::kRelativeFrequencyTolerance * a) {
        const double mid = std::sqrt(a * b);
        if (below(mid)) b = mid;
        else a = mid;
      }
      return std::pair{a, b};
    }
    lo = hi;
  }
  return std::nullopt;
}

double bandwidth_of(const CircuitState& c) {
  const double target = c.rf * c.rf / 2.0;
  auto crossing = first_crossing(model::kSearchStartHz, upper_search_frequency(c),
                                 [&](double f) { return c.transimpedance_norm(f) < target; });
  if (!crossing || crossing->second == model::kSearchStartHz)
    throw ModelError("no -3 dB crossing of the transimpedance in the search window");
  return std::sqrt(crossing->first * crossing->second);
}

double phase_margin_of(const CircuitState& c) {
  const double f_end = upper_search_frequency(c);
  auto crossing = first_crossing(model::kSearchStartHz, f_end,
                                 [&](double f) { return c.loop_gain_norm(f) < 1.0; });
  double f_c = f_end;
  if (crossing) {
    if (crossing->second == model::kSearchStartHz) return 180.0;
    f_c = std::sqrt(crossing->first * crossing->second);
  }
  const double phase_deg = std::arg(c.loop_gain(f_c)) * 180.0 / std::numbers::pi;
  return std::clamp(180.0 + phase_deg, 0.0, 180.0);
}

double noise_decades(const OpAmpParams& oa, const OperatingConditions& cond) {
  if (cond.noise_integration_decades > 0.0) return cond.noise_integration_decades;
  return std::log10(std::min(10.0 * oa.gbw, 1e9) / model::kSearchStartHz);
}

double photocurrent(const PhotodiodeParams& pd, const OperatingConditions& cond) {
  return pd.responsivity * cond.min_irradiance * pd.active_area;
}

double output_noise_rms_of(const CircuitState& c, const PhotodiodeParams& pd,
                           const OpAmpParams& oa, const OperatingConditions& cond) {
  const auto& src = cond.noise;
  const double en2 = src.voltage ? oa.voltage_noise_density * oa.voltage_noise_density : 0.0;
  double in2 = 0.0;
  if (src.current) in2 += oa.current_noise_density * oa.current_noise_density;
  if (src.shot) in2 += 2.0 * model::kElementaryCharge * (photocurrent(pd, cond) + pd.dark_current);
  if (src.thermal) in2 += 4.0 * model::kBoltzmann * cond.temperature / c.rf;

  auto density = [&](double f) {
    const Complex d = c.denominator(f);
    const double inv = 1.0 / std::norm(d);
    const double x = kTwoPi * f * c.rf * (c.cf + c.c_in);
    const double a0 = c.dc_gain;
    return inv * a0 * a0 * (en2 * (1.0 + x * x) + in2 * c.rf * c.rf);
  };

  const double decades = noise_decades(oa, cond);
  const auto n = static_cast<long>(std::ceil(decades * model::kNoisePointsPerDecade));
  const double ratio = std::pow(10.0, decades / static_cast<double>(n));

  double f_prev = model::kSearchStartHz;
  double s_prev = density(f_prev);
  double integral = 0.0;
  for (long k = 1; k <= n; ++k) {
    const double f = f_prev * ratio;
    const double s = density(f);
    integral += 0.5 * (s + s_prev) * (f - f_prev);
    f_prev = f;
    s_prev = s;
  }
  return std::sqrt(integral);
}

double snr_of(const CircuitState& c, const PhotodiodeParams& pd, const OpAmpParams& oa,
              const OperatingConditions& cond) {
  const double signal = photocurrent(pd, cond) * c.rf;
  return 20.0 * std::log10(signal / output_noise_rms_of(c, pd, oa, cond));
}

}  // namespace

void PhotodiodeParams::validate() const {
  require_positive(responsivity, "photodiode responsivity");
  require_positive(active_area, "photodiode active_area");
  if (!(dark_current >= 0.0) || !std::isfinite(dark_current))
    throw ConfigError("photodiode dark_current must be non-negative");
  require_positive(v_reverse_max, "photodiode v_reverse_max");
  if (cv_curve.size() < 2) throw ConfigError("photodiode C-V curve needs at least two points");
  for (std::size_t i = 0; i < cv_curve.size(); ++i) {
    const auto& p = cv_curve[i];
    if (!(p.reverse_voltage >= 0.0) || !std::isfinite(p.reverse_voltage))
      throw ConfigError("C-V curve voltages must be non-negative");
    require_positive(p.capacitance, "C-V curve capacitance");
    if (i > 0) {
      if (!(cv_curve[i - 1].reverse_voltage < p.reverse_voltage))
        throw ConfigError("C-V curve voltages must be strictly increasing");
      if (!(cv_curve[i - 1].capacitance > p.capacitance))
        throw ConfigError("C-V curve capacitances must be strictly decreasing");
    }
  }
}

void OpAmpParams::validate() const {
  require_positive(dc_gain, "op-amp dc_gain");
  require_positive(gbw, "op-amp gbw");
  require_positive(voltage_noise_density, "op-amp voltage_noise_density");
  require_positive(current_noise_density, "op-amp current_noise_density");
  require_positive(input_capacitance, "op-amp input_capacitance");
  if (!(gbw < dc_gain * 1e12)) throw ConfigError("op-amp gbw is implausibly large for its dc_gain");
}

void OperatingConditions::validate() const {
  require_positive(min_irradiance, "min_irradiance");
  require_positive(temperature, "temperature");
  if (!(noise_integration_decades >= 0.0) || !std::isfinite(noise_integration_decades))
    throw ConfigError("noise_integration_decades must be >= 0 (0 selects the default)");
}

double diode_capacitance(const PhotodiodeParams& pd, double vd) {
  if (!(vd >= 0.0) || vd > pd.v_reverse_max)
    throw DomainError("bias voltage outside [0, v_reverse_max]");
  const auto& curve = pd.cv_curve;
  if (vd <= curve.front().reverse_voltage) return curve.front().capacitance;
  if (vd >= curve.back().reverse_voltage) return curve.back().capacitance;

  auto upper = std::upper_bound(curve.begin(), curve.end(), vd,
                                [](double v, const CvPoint& p) { return v < p.reverse_voltage; });
  const CvPoint& hi = *upper;
  const CvPoint& lo = *(upper - 1);
  if (vd == lo.reverse_voltage) return lo.capacitance;

  const double x = std::log(vd + 1.0);
  const double x0 = std::log(lo.reverse_voltage + 1.0);
  const double x1 = std::log(hi.reverse_voltage + 1.0);
  const double t = (x - x0) / (x1 - x0);
  return std::exp(std::log(lo.capacitance) + t * (std::log(hi.capacitance) - std::log(lo.capacitance)));
}

CircuitState CircuitState::make(const DesignPoint& point, const PhotodiodeParams& pd,
                                const OpAmpParams& oa) {
  return {point.rf, point.cf, diode_capacitance(pd, point.vd) + oa.input_capacitance, oa.dc_gain,
          oa.gbw};
}

Complex CircuitState::open_loop_gain(double f) const {
  return dc_gain / Complex(1.0, f * dc_gain / gbw);
}

Complex CircuitState::feedback_impedance(double f) const {
  return rf / Complex(1.0, kTwoPi * f * rf * cf);
}

Complex CircuitState::denominator(double f) const {
  const double s = f * dc_gain / gbw;
  const double w = kTwoPi * f;
  // (1 + A0 + j s)(1 + j w Rf Cf) + j w Rf C_in (1 + j s)
  const double a = w * rf * cf;
  const double b = w * rf * c_in;
  return {(1.0 + dc_gain) - s * a - b * s, (1.0 + dc_gain) * a + s + b};
}

Complex CircuitState::loop_gain(double f) const {
  const double w = kTwoPi * f;
  return dc_gain * Complex(1.0, w * rf * cf) /
         (Complex(1.0, f * dc_gain / gbw) * Complex(1.0, w * rf * (cf + c_in)));
}

Complex CircuitState::transimpedance(double f) const { return dc_gain * rf / denominator(f); }

Complex CircuitState::voltage_noise_gain(double f) const {
  return dc_gain * Complex(1.0, kTwoPi * f * rf * (cf + c_in)) / denominator(f);
}

double CircuitState::loop_gain_norm(double f) const {
  const double w = kTwoPi * f;
  const double s = f * dc_gain / gbw;
  const double zero = w * rf * cf;
  const double pole = w * rf * (cf + c_in);
  return dc_gain * dc_gain * (1.0 + zero * zero) / ((1.0 + s * s) * (1.0 + pole * pole));
}

double CircuitState::transimpedance_norm(double f) const {
  const double g = dc_gain * rf;
  return g * g / std::norm(denominator(f));
}

double CircuitState::voltage_noise_gain_norm(double f) const {
  const double x = kTwoPi * f * rf * (cf + c_in);
  return dc_gain * dc_gain * (1.0 + x * x) / std::norm(denominator(f));
}

Complex loop_gain(const DesignPoint& point, const PhotodiodeParams& pd, const OpAmpParams& oa,
                  double f) {
  if (!(f > 0.0)) throw DomainError("loop gain frequency must be positive");
  return CircuitState::make(point, pd, oa).loop_gain(f);
}

double bandwidth(const DesignPoint& point, const PhotodiodeParams& pd, const OpAmpParams& oa) {
  return bandwidth_of(CircuitState::make(point, pd, oa));
}

double phase_margin(const DesignPoint& point, const PhotodiodeParams& pd, const OpAmpParams& oa) {
  return phase_margin_of(CircuitState::make(point, pd, oa));
}

double output_noise_rms(const DesignPoint& point, const PhotodiodeParams& pd,
                        const OpAmpParams& oa, const OperatingConditions& cond) {
  return output_noise_rms_of(CircuitState::make(point, pd, oa), pd, oa, cond);
}

double snr(const DesignPoint& point, const PhotodiodeParams& pd, const OpAmpParams& oa,
           const OperatingConditions& cond) {
  return snr_of(CircuitState::make(point, pd, oa), pd, oa, cond);
}

PerformanceVariables evaluate_performance(const DesignPoint& point, const PhotodiodeParams& pd,
                                          const OpAmpParams& oa, const OperatingConditions& cond) {
  const CircuitState c = CircuitState::make(point, pd, oa);
  PerformanceVariables out;
  out.snr_db = snr_of(c, pd, oa, cond);
  out.phase_margin_deg = phase_margin_of(c);
  try {
    out.bandwidth_hz = bandwidth_of(c);
  } catch (const ModelError&) {
    out.bandwidth_hz = std::numeric_limits<double>::quiet_NaN();
    out.model_ok = false;
  }
  return out;
}

CircuitEvaluator::CircuitEvaluator(PhotodiodeParams pd, OpAmpParams oa, OperatingConditions cond)
    : pd_(std::move(pd)), oa_(std::move(oa)), cond_(cond) {
  pd_.validate();
  oa_.validate();
  cond_.validate();
}

}  // namespace pdopt
