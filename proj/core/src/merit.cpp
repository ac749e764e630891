#include "pdopt/merit.hpp"

#include <cmath>

#include "pdopt/errors.hpp"

namespace pdopt {
namespace {

double ramp(double x, double x_zero, double x_opt) {
  const double r = (x - x_opt) / (x_zero - x_opt);
  return 1.0 - r * r;
}

bool finite_all(double a, double b, double c) {
  return std::isfinite(a) && std::isfinite(b) && std::isfinite(c);
}

}  // namespace

void UnilateralSpec::validate() const {
  if (!std::isfinite(x_min) || !std::isfinite(x_opt))
    throw ConfigError("unilateral merit bounds must be finite");
  const bool ordered = direction == BoundDirection::Lower ? x_min < x_opt : x_min > x_opt;
  if (!ordered) throw ConfigError("unilateral merit bound and optimum are misordered");
}

void BilateralSpec::validate() const {
  if (!finite_all(x_min, x_opt, x_max)) throw ConfigError("bilateral merit bounds must be finite");
  if (!(x_min < x_opt && x_opt < x_max))
    throw ConfigError("bilateral merit requires x_min < x_opt < x_max");
}

void MeritSpec::validate() const {
  snr.validate();
  bandwidth.validate();
  phase_margin.validate();
}

double merit_unilateral(double x, const UnilateralSpec& spec) noexcept {
  if (std::isnan(x)) return 0.0;
  if (spec.direction == BoundDirection::Lower) {
    if (x <= spec.x_min) return 0.0;
    if (x >= spec.x_opt) return 1.0;
  } else {
    if (x >= spec.x_min) return 0.0;
    if (x <= spec.x_opt) return 1.0;
  }
  return ramp(x, spec.x_min, spec.x_opt);
}

double merit_bilateral(double x, const BilateralSpec& spec) noexcept {
  if (std::isnan(x) || x <= spec.x_min || x >= spec.x_max) return 0.0;
  return x < spec.x_opt ? ramp(x, spec.x_min, spec.x_opt) : ramp(x, spec.x_max, spec.x_opt);
}

MeritBreakdown global_merit(const PerformanceVariables& performance, const MeritSpec& spec) noexcept {
  if (!performance.model_ok ||
      !finite_all(performance.snr_db, performance.bandwidth_hz, performance.phase_margin_deg))
    return {};
  return MeritBreakdown::from_parts(merit_unilateral(performance.snr_db, spec.snr),
                                    merit_bilateral(performance.bandwidth_hz, spec.bandwidth),
                                    merit_unilateral(performance.phase_margin_deg, spec.phase_margin));
}

}  // namespace pdopt
