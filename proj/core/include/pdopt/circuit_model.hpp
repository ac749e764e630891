#pragma once

/// @file circuit_model.hpp
/// Small-signal model of a photodiode + op-amp transimpedance amplifier.
///
/// The op-amp is a single-pole voltage amplifier A(f) = A0 / (1 + j f A0/GBW).
/// The feedback network is Rf || Cf; the inverting input sees the photodiode
/// junction capacitance C_D(V_D) in parallel with the op-amp input capacitance.
/// From those:
///
///   beta(f) = Z_in / (Z_in + Z_f)            feedback factor
///   T(f)    = A(f) beta(f)                    loop gain
///   Z_T(f)  = Z_f T / (1 + T)                 closed-loop transimpedance
///
/// Output noise has four white sources: op-amp voltage noise times the noise
/// gain, op-amp current noise, shot noise of photo + dark current, and Rf
/// thermal noise. 1/f noise and the diode shunt resistance are not modelled.

#include <complex>
#include <cstddef>
#include <utility>
#include <vector>

#include "pdopt/design_space.hpp"

namespace pdopt {

using Complex = std::complex<double>;

struct PerformanceVariables {
  double snr_db = 0.0;            ///< S/N at minimum irradiance [dB]
  double bandwidth_hz = 0.0;      ///< -3 dB closed-loop transimpedance bandwidth [Hz]
  double phase_margin_deg = 0.0;  ///< in [0, 180]
  /// False when the model failed (e.g. no -3 dB crossing); bandwidth is NaN then.
  bool model_ok = true;

  friend bool operator==(const PerformanceVariables&, const PerformanceVariables&) = default;
};

struct CvPoint {
  double reverse_voltage = 0.0;  ///< [V]
  double capacitance = 0.0;      ///< [F]
};

struct PhotodiodeParams {
  double responsivity = 0.0;   ///< [A/W] at the design wavelength
  double active_area = 0.0;    ///< [m^2]
  double dark_current = 0.0;   ///< [A]
  std::vector<CvPoint> cv_curve;
  double v_reverse_max = 0.0;  ///< [V]

  /// Throws ConfigError when the invariants do not hold.
  void validate() const;
};

struct OpAmpParams {
  double dc_gain = 0.0;                ///< A0
  double gbw = 0.0;                    ///< gain-bandwidth product [Hz]
  double voltage_noise_density = 0.0;  ///< e_n [V/sqrt(Hz)]
  double current_noise_density = 0.0;  ///< i_n [A/sqrt(Hz)]
  double input_capacitance = 0.0;      ///< [F]

  void validate() const;
};

/// Selects which output-noise contributions are integrated.
struct NoiseSources {
  bool voltage = true;
  bool current = true;
  bool shot = true;
  bool thermal = true;
};

struct OperatingConditions {
  double min_irradiance = 0.0;  ///< [W/m^2]
  double temperature = 300.0;   ///< [K]
  /// Decades integrated upward from 1 Hz. Zero selects
  /// log10(min(10 * GBW, 1e9 Hz)).
  double noise_integration_decades = 0.0;
  NoiseSources noise{};

  void validate() const;
};

namespace model {

inline constexpr double kElementaryCharge = 1.602176634e-19;  // C
inline constexpr double kBoltzmann = 1.380649e-23;            // J/K

inline constexpr double kBracketPointsPerDecade = 50.0;
inline constexpr double kNoisePointsPerDecade = 100.0;
inline constexpr double kRelativeFrequencyTolerance = 1e-6;
inline constexpr double kSearchStartHz = 1.0;

}  // namespace model

/// Junction capacitance at reverse bias vd: log-log interpolation of the C-V
/// curve with the voltage axis shifted by +1 V, clamped to the end values
/// outside the tabulated span. Throws DomainError outside [0, v_reverse_max].
double diode_capacitance(const PhotodiodeParams& pd, double vd);

/// Per-point quantities shared by the frequency-domain functions below.
///
/// With s = f A0 / GBW and w = 2 pi f, substituting the single-pole A(f) and
/// Z_f, Z_in into the definitions gives
///
///   T(f)        = A0 (1 + j w Rf Cf) / ((1 + j s) (1 + j w Rf (Cf + C_in)))
///   Z_T(f)      = A0 Rf / D(f)
///   NG(f) H(f)  = A0 (1 + j w Rf (Cf + C_in)) / D(f)
///   D(f)        = (1 + A0 + j s)(1 + j w Rf Cf) + j w Rf C_in (1 + j s)
///
/// which the hot paths evaluate without complex division.
struct CircuitState {
  double rf;
  double cf;
  double c_in;  ///< C_D(V_D) + op-amp input capacitance
  double dc_gain;
  double gbw;

  static CircuitState make(const DesignPoint& point, const PhotodiodeParams& pd,
                           const OpAmpParams& oa);

  Complex open_loop_gain(double f) const;
  Complex feedback_impedance(double f) const;
  Complex loop_gain(double f) const;
  Complex transimpedance(double f) const;
  /// Transfer from op-amp input voltage noise to the output: NG(f) T/(1+T).
  Complex voltage_noise_gain(double f) const;

  double loop_gain_norm(double f) const;           ///< |T|^2
  double transimpedance_norm(double f) const;      ///< |Z_T|^2
  double voltage_noise_gain_norm(double f) const;  ///< |NG H|^2

  /// D(f) above.
  Complex denominator(double f) const;
};

/// T(f) = A(f) beta(f). Requires f > 0.
Complex loop_gain(const DesignPoint& point, const PhotodiodeParams& pd, const OpAmpParams& oa,
                  double f);

/// Lowest frequency at which |Z_T| falls to Rf/sqrt(2). Throws ModelError when
/// there is no crossing between 1 Hz and 10 * GBW.
double bandwidth(const DesignPoint& point, const PhotodiodeParams& pd, const OpAmpParams& oa);

/// 180 deg + arg T(f_c) at the unity-loop-gain frequency, clamped to [0, 180].
/// Returns 180 when |T| < 1 over the whole search window.
double phase_margin(const DesignPoint& point, const PhotodiodeParams& pd, const OpAmpParams& oa);

/// 20 log10(V_signal / V_noise_rms) at the minimum irradiance.
double snr(const DesignPoint& point, const PhotodiodeParams& pd, const OpAmpParams& oa,
           const OperatingConditions& cond);

/// Output rms noise voltage used by snr().
double output_noise_rms(const DesignPoint& point, const PhotodiodeParams& pd,
                        const OpAmpParams& oa, const OperatingConditions& cond);

PerformanceVariables evaluate_performance(const DesignPoint& point, const PhotodiodeParams& pd,
                                          const OpAmpParams& oa, const OperatingConditions& cond);

/// Pluggable evaluator contract used by the search algorithms. Implementations
/// must be pure and safe to call concurrently.
class Evaluator {
 public:
  virtual ~Evaluator() = default;
  virtual PerformanceVariables evaluate(const DesignPoint& point) const = 0;
};

/// The transimpedance model above bound to one set of parameters.
class CircuitEvaluator final : public Evaluator {
 public:
  CircuitEvaluator(PhotodiodeParams pd, OpAmpParams oa, OperatingConditions cond);

  PerformanceVariables evaluate(const DesignPoint& point) const override {
    return evaluate_performance(point, pd_, oa_, cond_);
  }

  const PhotodiodeParams& photodiode() const noexcept { return pd_; }
  const OpAmpParams& opamp() const noexcept { return oa_; }
  const OperatingConditions& conditions() const noexcept { return cond_; }

 private:
  PhotodiodeParams pd_;
  OpAmpParams oa_;
  OperatingConditions cond_;
};

}  // namespace pdopt
