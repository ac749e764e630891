#pragma once

/// @file merit.hpp
/// Degree-of-compliance functions mapping a performance variable onto [0, 1]
/// and their product, the global merit.

#include "pdopt/circuit_model.hpp"

namespace pdopt {

/// Which side of x_opt the acceptable region is bounded on.
enum class BoundDirection {
  Lower,  ///< larger is better: 0 at or below x_min, 1 at or above x_opt
  Upper,  ///< smaller is better: 0 at or above x_min, 1 at or below x_opt
};

/// One-sided quadratic ramp. For an upper-bounded variable x_min holds the
/// (upper) limit of the acceptable region.
struct UnilateralSpec {
  double x_min = 0.0;
  double x_opt = 1.0;
  BoundDirection direction = BoundDirection::Lower;

  /// Throws ConfigError when x_min and x_opt are misordered for the direction.
  void validate() const;
};

/// Two-sided quadratic bump, zero outside (x_min, x_max) and 1 only at x_opt.
struct BilateralSpec {
  double x_min = 0.0;
  double x_opt = 1.0;
  double x_max = 2.0;

  void validate() const;
};

struct MeritSpec {
  UnilateralSpec snr;           ///< dB
  BilateralSpec bandwidth;      ///< Hz
  UnilateralSpec phase_margin;  ///< degrees

  void validate() const;
};

struct MeritBreakdown {
  double snr = 0.0;
  double bandwidth = 0.0;
  double phase = 0.0;
  double global = 0.0;  ///< snr * bandwidth * phase

  friend bool operator==(const MeritBreakdown&, const MeritBreakdown&) = default;

  static MeritBreakdown from_parts(double snr, double bandwidth, double phase) {
    return {snr, bandwidth, phase, snr * bandwidth * phase};
  }
};

/// NaN maps to 0; +-infinity follows the piecewise definition.
double merit_unilateral(double x, const UnilateralSpec& spec) noexcept;
double merit_bilateral(double x, const BilateralSpec& spec) noexcept;

/// Per-variable merits and their product. A failed or non-finite model result
/// yields an all-zero breakdown.
MeritBreakdown global_merit(const PerformanceVariables& performance, const MeritSpec& spec) noexcept;

}  // namespace pdopt
