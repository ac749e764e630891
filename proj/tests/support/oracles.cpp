#include "oracles.hpp"

#include <algorithm>
#include <boost/math/distributions/chi_squared.hpp>
#include <cmath>
#include <numbers>
#include <random>
#include <set>

namespace pdopt::oracle {

std::filesystem::path source_dir() { return PDOPT_SOURCE_DIR; }
std::filesystem::path data_dir() { return source_dir() / "data"; }
std::filesystem::path fixture_dir() { return source_dir() / "tests" / "fixtures"; }

double unilateral(double x, double x_min, double x_opt, bool upper_bounded) {
  if (std::isnan(x)) return 0.0;
  if (upper_bounded) {
    // mirror image: acceptable below x_min, ideal below x_opt
    x = -x;
    x_min = -x_min;
    x_opt = -x_opt;
  }
  if (x <= x_min) return 0.0;
  if (x >= x_opt) return 1.0;
  const double r = (x - x_opt) / (x_min - x_opt);
  return 1.0 - r * r;
}

double bilateral(double x, double x_min, double x_opt, double x_max) {
  if (std::isnan(x)) return 0.0;
  if (x <= x_min || x >= x_max) return 0.0;
  const double edge = x < x_opt ? x_min : x_max;
  const double r = (x - x_opt) / (edge - x_opt);
  return 1.0 - r * r;
}

double capacitance(const std::vector<std::pair<double, double>>& cv, double vd) {
  if (vd <= cv.front().first) return cv.front().second;
  if (vd >= cv.back().first) return cv.back().second;
  std::size_t i = 1;
  while (cv[i].first < vd) ++i;
  const auto [v0, c0] = cv[i - 1];
  const auto [v1, c1] = cv[i];
  const double t = (std::log(vd + 1.0) - std::log(v0 + 1.0)) /
                   (std::log(v1 + 1.0) - std::log(v0 + 1.0));
  return std::exp(std::log(c0) + t * (std::log(c1) - std::log(c0)));
}

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
const cplx kJ{0.0, 1.0};
}  // namespace

cplx NaiveTia::gain(double f) const { return a0 / (1.0 + kJ * f * a0 / gbw); }
cplx NaiveTia::z_f(double f) const { return rf / (1.0 + kJ * kTwoPi * f * rf * cf); }
cplx NaiveTia::z_in(double f) const { return 1.0 / (kJ * kTwoPi * f * c_in); }
cplx NaiveTia::beta(double f) const { return z_in(f) / (z_in(f) + z_f(f)); }
cplx NaiveTia::loop(double f) const { return gain(f) * beta(f); }
cplx NaiveTia::z_t(double f) const {
  const cplx t = loop(f);
  return z_f(f) * t / (1.0 + t);
}
cplx NaiveTia::noise_gain_closed(double f) const {
  const cplx t = loop(f);
  return (1.0 + z_f(f) / z_in(f)) * t / (1.0 + t);
}

NaiveTia naive_tia(const DesignPoint& p, const PhotodiodeParams& pd, const OpAmpParams& oa) {
  std::vector<std::pair<double, double>> cv;
  for (const auto& k : pd.cv_curve) cv.emplace_back(k.reverse_voltage, k.capacitance);
  return {p.rf, p.cf, capacitance(cv, p.vd) + oa.input_capacitance, oa.dc_gain, oa.gbw};
}

double naive_bandwidth(const NaiveTia& tia, double f_max) {
  const double target = tia.rf / std::sqrt(2.0);
  auto above = [&](double f) { return std::abs(tia.z_t(f)) > target; };
  const double decades = std::log10(f_max);
  const int steps = static_cast<int>(std::ceil(decades * 200.0));
  double lo = 1.0;
  for (int i = 1; i <= steps; ++i) {
    const double f = std::pow(10.0, decades * i / steps);
    if (!above(f)) {
      double hi = f;
      for (int it = 0; it < 200; ++it) {
        const double mid = std::sqrt(lo * hi);
        (above(mid) ? lo : hi) = mid;
      }
      return std::sqrt(lo * hi);
    }
    lo = f;
  }
  return std::nan("");
}

double naive_noise_rms(const NaiveTia& tia, double e_n, double i_n, double i_dc, double temp,
                       double decades, double points_per_decade) {
  constexpr double q = 1.602176634e-19;
  constexpr double k = 1.380649e-23;
  const double white = i_n * i_n + 2.0 * q * i_dc + 4.0 * k * temp / tia.rf;
  auto density = [&](double f) {
    return e_n * e_n * std::norm(tia.noise_gain_closed(f)) + white * std::norm(tia.z_t(f));
  };
  const auto n = static_cast<long>(std::ceil(decades * points_per_decade));
  double sum = 0.0;
  double f_prev = 1.0, s_prev = density(1.0);
  for (long i = 1; i <= n; ++i) {
    const double f = std::pow(10.0, decades * static_cast<double>(i) / static_cast<double>(n));
    const double s = density(f);
    sum += 0.5 * (s + s_prev) * (f - f_prev);
    f_prev = f;
    s_prev = s;
  }
  return std::sqrt(sum);
}

std::pair<DesignPoint, double> brute_force_best(const DesignSpace& space, const ScoreFn& score) {
  DesignPoint best{};
  double best_merit = -1.0;
  for (double rf : space.rf_values())
    for (double cf : space.cf_values())
      for (double vd : space.vd_values()) {
        const DesignPoint p{rf, cf, vd};
        const double m = score(p).global;
        if (m > best_merit) {
          best_merit = m;
          best = p;
        }
      }
  return {best, best_merit};
}

DesignSpace random_space(std::mt19937_64& rng, std::size_t max_points) {
  auto axis = [&](std::size_t n, double scale) {
    std::set<double> values;
    std::uniform_real_distribution<double> u(0.1, 10.0);
    while (values.size() < n) values.insert(scale * u(rng));
    return std::vector<double>(values.begin(), values.end());
  };
  std::uniform_int_distribution<std::size_t> size(1, 10);
  std::size_t a, b, c;
  do {
    a = size(rng);
    b = size(rng);
    c = size(rng);
  } while (a * b * c > max_points);
  std::vector<double> vd = axis(c, 1.0);
  return DesignSpace(axis(a, 1e5), axis(b, 1e-11), vd);
}

ScoreFn synthetic_score(std::uint64_t salt) {
  return [salt](const DesignPoint& p) {
    const double s = static_cast<double>(salt % 97) / 97.0;
    const double x = std::log10(p.rf) - 5.5 - s;
    const double y = std::log10(p.cf) + 10.5 + s;
    const double z = p.vd / 5.0 - 1.0;
    double v = 1.0 - 0.3 * x * x - 0.4 * y * y - 0.2 * z * z + 0.1 * std::sin(7.0 * x * y + s);
    v = std::clamp(v, 0.0, 1.0);
    v = std::floor(v * 64.0) / 64.0;
    return MeritBreakdown::from_parts(v, 1.0, 1.0);
  };
}

double chi_square_critical(double dof, double alpha) {
  const boost::math::chi_squared dist(dof);
  return boost::math::quantile(boost::math::complement(dist, alpha));
}

double chi_square_uniform(std::span<const std::uint64_t> counts) {
  double total = 0.0;
  for (auto c : counts) total += static_cast<double>(c);
  const double expected = total / static_cast<double>(counts.size());
  double stat = 0.0;
  for (auto c : counts) {
    const double d = static_cast<double>(c) - expected;
    stat += d * d / expected;
  }
  return stat;
}

}  // namespace pdopt::oracle
