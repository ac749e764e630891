#include "pdopt/design_space.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>
#include <string>

#include "pdopt/errors.hpp"

namespace pdopt {
namespace {

constexpr std::array<double, 6> kE6 = {1.0, 1.5, 2.2, 3.3, 4.7, 6.8};

constexpr std::array<double, 12> kE12 = {1.0, 1.2, 1.5, 1.8, 2.2, 2.7,
                                         3.3, 3.9, 4.7, 5.6, 6.8, 8.2};

constexpr std::array<double, 24> kE24 = {1.0, 1.1, 1.2, 1.3, 1.5, 1.6, 1.8, 2.0,
                                         2.2, 2.4, 2.7, 3.0, 3.3, 3.6, 3.9, 4.3,
                                         4.7, 5.1, 5.6, 6.2, 6.8, 7.5, 8.2, 9.1};

constexpr std::array<double, 48> kE48 = {
    1.00, 1.05, 1.10, 1.15, 1.21, 1.27, 1.33, 1.40, 1.47, 1.54, 1.62, 1.69,
    1.78, 1.87, 1.96, 2.05, 2.15, 2.26, 2.37, 2.49, 2.61, 2.74, 2.87, 3.01,
    3.16, 3.32, 3.48, 3.65, 3.83, 4.02, 4.22, 4.42, 4.64, 4.87, 5.11, 5.36,
    5.62, 5.90, 6.19, 6.49, 6.81, 7.15, 7.50, 7.87, 8.25, 8.66, 9.09, 9.53};

constexpr std::array<double, 96> kE96 = {
    1.00, 1.02, 1.05, 1.07, 1.10, 1.13, 1.15, 1.18, 1.21, 1.24, 1.27, 1.30,
    1.33, 1.37, 1.40, 1.43, 1.47, 1.50, 1.54, 1.58, 1.62, 1.65, 1.69, 1.74,
    1.78, 1.82, 1.87, 1.91, 1.96, 2.00, 2.05, 2.10, 2.15, 2.21, 2.26, 2.32,
    2.37, 2.43, 2.49, 2.55, 2.61, 2.67, 2.74, 2.80, 2.87, 2.94, 3.01, 3.09,
    3.16, 3.24, 3.32, 3.40, 3.48, 3.57, 3.65, 3.74, 3.83, 3.92, 4.02, 4.12,
    4.22, 4.32, 4.42, 4.53, 4.64, 4.75, 4.87, 4.99, 5.11, 5.23, 5.36, 5.49,
    5.62, 5.76, 5.90, 6.04, 6.19, 6.34, 6.49, 6.65, 6.81, 6.98, 7.15, 7.32,
    7.50, 7.68, 7.87, 8.06, 8.25, 8.45, 8.66, 8.87, 9.09, 9.31, 9.53, 9.76};

// 10^|exponent| by repeated multiplication: exact for the decades used here.
double power_of_ten(int exponent) {
  double p = 1.0;
  for (int i = 0; i < std::abs(exponent); ++i) p *= 10.0;
  return p;
}

void check_axis(const std::vector<double>& values, const char* name, bool allow_zero) {
  if (values.empty()) throw DomainError(std::string(name) + " axis is empty");
  for (std::size_t i = 0; i < values.size(); ++i) {
    const double v = values[i];
    if (!std::isfinite(v) || v < 0.0 || (!allow_zero && v == 0.0))
      throw DomainError(std::string(name) + " axis holds an out-of-range value");
    if (i > 0 && !(values[i - 1] < v))
      throw DomainError(std::string(name) + " axis is not strictly increasing");
  }
}

std::optional<std::size_t> find_exact(const std::vector<double>& axis, double value) {
  auto it = std::lower_bound(axis.begin(), axis.end(), value);
  if (it == axis.end() || *it != value) return std::nullopt;
  return static_cast<std::size_t>(it - axis.begin());
}

}  // namespace

std::span<const double> series_mantissas(ESeries series) noexcept {
  switch (series) {
    case ESeries::E6: return kE6;
    case ESeries::E12: return kE12;
    case ESeries::E24: return kE24;
    case ESeries::E48: return kE48;
    case ESeries::E96: return kE96;
  }
  return {};
}

std::size_t points_per_decade(ESeries series) noexcept { return series_mantissas(series).size(); }

std::string_view to_string(ESeries series) noexcept {
  switch (series) {
    case ESeries::E6: return "E6";
    case ESeries::E12: return "E12";
    case ESeries::E24: return "E24";
    case ESeries::E48: return "E48";
    case ESeries::E96: return "E96";
  }
  return "?";
}

std::optional<ESeries> parse_series(std::string_view name) noexcept {
  for (auto s : {ESeries::E6, ESeries::E12, ESeries::E24, ESeries::E48, ESeries::E96})
    if (to_string(s) == name) return s;
  return std::nullopt;
}

std::vector<double> e_series_values(const ESeriesSpec& spec) {
  const auto mantissas = series_mantissas(spec.series);
  if (mantissas.empty()) throw DomainError("unknown E-series");
  if (spec.decade_min >= spec.decade_max)
    throw DomainError("E-series decade range is empty: decade_min must be < decade_max");

  std::vector<double> values;
  values.reserve(mantissas.size() * static_cast<std::size_t>(spec.decade_max - spec.decade_min));
  for (int decade = spec.decade_min; decade < spec.decade_max; ++decade) {
    const double scale = power_of_ten(decade);
    for (double m : mantissas) values.push_back(decade >= 0 ? m * scale : m / scale);
  }
  return values;
}

std::vector<double> discretize_bias(double v_min, double v_max, std::size_t n) {
  if (n < 2) throw DomainError("bias discretization needs at least two values");
  if (!(v_min >= 0.0) || !(v_max > v_min) || !std::isfinite(v_max))
    throw DomainError("bias range must satisfy 0 <= v_min < v_max");

  std::vector<double> values(n);
  const double step = (v_max - v_min) / static_cast<double>(n - 1);
  for (std::size_t i = 0; i < n; ++i) values[i] = v_min + step * static_cast<double>(i);
  values.back() = v_max;
  return values;
}

DesignSpace::DesignSpace(std::vector<double> rf_values, std::vector<double> cf_values,
                         std::vector<double> vd_values)
    : rf_(std::move(rf_values)), cf_(std::move(cf_values)), vd_(std::move(vd_values)) {
  check_axis(rf_, "Rf", false);
  check_axis(cf_, "Cf", false);
  check_axis(vd_, "VD", true);
}

std::size_t DesignSpace::axis_size(std::size_t axis) const {
  switch (axis) {
    case 0: return rf_.size();
    case 1: return cf_.size();
    case 2: return vd_.size();
    default: throw std::out_of_range("design space has three axes");
  }
}

DesignPoint DesignSpace::at(const GridIndex& index) const {
  return {rf_.at(index.rf), cf_.at(index.cf), vd_.at(index.vd)};
}

GridIndex DesignSpace::unflatten(std::uint64_t flat) const noexcept {
  GridIndex idx;
  idx.vd = static_cast<std::size_t>(flat % vd_.size());
  flat /= vd_.size();
  idx.cf = static_cast<std::size_t>(flat % cf_.size());
  idx.rf = static_cast<std::size_t>(flat / cf_.size());
  return idx;
}

std::optional<GridIndex> DesignSpace::index_of(const DesignPoint& point) const noexcept {
  auto r = find_exact(rf_, point.rf);
  auto c = find_exact(cf_, point.cf);
  auto v = find_exact(vd_, point.vd);
  if (!r || !c || !v) return std::nullopt;
  return GridIndex{*r, *c, *v};
}

GridIndex DesignSpace::sample_index(Rng& rng) const {
  GridIndex idx;
  idx.rf = uniform_index(rng, rf_.size());
  idx.cf = uniform_index(rng, cf_.size());
  idx.vd = uniform_index(rng, vd_.size());
  return idx;
}

}  // namespace pdopt
