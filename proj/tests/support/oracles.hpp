#pragma once

// Independent reference implementations used as test oracles. Nothing here
// calls into the library code it is compared against.

#include <complex>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <random>
#include <span>
#include <utility>
#include <vector>

#include "pdopt/circuit_model.hpp"
#include "pdopt/design_space.hpp"
#include "pdopt/optimizers.hpp"

namespace pdopt::oracle {

std::filesystem::path source_dir();
std::filesystem::path data_dir();
std::filesystem::path fixture_dir();

// --- merit ------------------------------------------------------------------

/// Quadratic ramp coded straight from the piecewise definition.
double unilateral(double x, double x_min, double x_opt, bool upper_bounded);
double bilateral(double x, double x_min, double x_opt, double x_max);

// --- circuit -----------------------------------------------------------------

using cplx = std::complex<double>;

/// Log-log interpolation of a C-V table with the +1 V offset, clamped.
double capacitance(const std::vector<std::pair<double, double>>& cv, double vd);

/// The textbook transimpedance stage evaluated literally with complex
/// arithmetic: A(f), Z_f, Z_in, beta = Z_in/(Z_in+Z_f), T = A beta.
struct NaiveTia {
  double rf, cf, c_in, a0, gbw;

  cplx gain(double f) const;
  cplx z_f(double f) const;
  cplx z_in(double f) const;
  cplx beta(double f) const;
  cplx loop(double f) const;
  cplx z_t(double f) const;              ///< Z_f T / (1 + T)
  cplx noise_gain_closed(double f) const;  ///< (1 + Z_f/Z_in) T / (1 + T)
};

NaiveTia naive_tia(const DesignPoint& p, const PhotodiodeParams& pd, const OpAmpParams& oa);

/// Dense log scan (200 points/decade) for |Z_T| = Rf/sqrt(2), then 200
/// bisection steps. Returns NaN when there is no crossing below f_max.
double naive_bandwidth(const NaiveTia& tia, double f_max);

/// Trapezoid integral of the output noise density on a log grid from 1 Hz.
double naive_noise_rms(const NaiveTia& tia, double e_n, double i_n, double i_dc, double temp,
                       double decades, double points_per_decade);

// --- search --------------------------------------------------------------------

/// Plain triple loop over the axis vectors; first maximum wins.
std::pair<DesignPoint, double> brute_force_best(const DesignSpace& space, const ScoreFn& score);

/// Random axes with strictly increasing positive values and a total of at
/// most `max_points` points.
DesignSpace random_space(std::mt19937_64& rng, std::size_t max_points);

/// Deterministic bumpy landscape on an arbitrary space. Merit values are
/// quantized to multiples of 1/64 so that ties occur.
ScoreFn synthetic_score(std::uint64_t salt);

/// Upper-tail chi-square critical value.
double chi_square_critical(double dof, double alpha);

/// Pearson statistic of observed counts against a uniform expectation.
double chi_square_uniform(std::span<const std::uint64_t> counts);

}  // namespace pdopt::oracle
