#pragma once

/// @file design_space.hpp
/// Discrete design space of a transimpedance photodetector: feedback resistor
/// and capacitor drawn from IEC 60063 preferred-number series, and a linearly
/// discretized photodiode reverse bias.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <ranges>
#include <span>
#include <string_view>
#include <vector>

namespace pdopt {

/// Random stream used by every stochastic operation in the library.
using Rng = std::mt19937_64;

/// One candidate circuit.
struct DesignPoint {
  double rf = 0.0;  ///< feedback resistance [ohm]
  double cf = 0.0;  ///< feedback capacitance [F]
  double vd = 0.0;  ///< photodiode reverse bias [V]

  friend bool operator==(const DesignPoint&, const DesignPoint&) = default;
};

/// Axis indices of a DesignPoint inside its DesignSpace.
struct GridIndex {
  std::size_t rf = 0;
  std::size_t cf = 0;
  std::size_t vd = 0;

  friend bool operator==(const GridIndex&, const GridIndex&) = default;
};

enum class ESeries { E6, E12, E24, E48, E96 };

std::size_t points_per_decade(ESeries series) noexcept;
std::string_view to_string(ESeries series) noexcept;
std::optional<ESeries> parse_series(std::string_view name) noexcept;

/// Mantissas of a series in [1, 10), as tabulated by IEC 60063.
std::span<const double> series_mantissas(ESeries series) noexcept;

struct ESeriesSpec {
  ESeries series = ESeries::E24;
  int decade_min = 0;  ///< exponent of the lowest decade
  int decade_max = 1;  ///< exclusive upper exponent
};

/// All series values in [10^decade_min, 10^decade_max), ascending.
/// Throws DomainError when decade_min >= decade_max.
std::vector<double> e_series_values(const ESeriesSpec& spec);

/// n linearly spaced voltages, first == v_min and last == v_max exactly.
/// Throws DomainError for n < 2, v_max <= v_min or v_min < 0.
std::vector<double> discretize_bias(double v_min, double v_max, std::size_t n);

/// Immutable cartesian grid of (Rf, Cf, VD) values.
///
/// Enumeration order is lexicographic with Rf outermost and VD innermost; the
/// flat index of a point is its position in that order.
class DesignSpace {
 public:
  /// Each axis must be non-empty and strictly increasing; Rf and Cf strictly
  /// positive, VD non-negative. Throws DomainError otherwise.
  DesignSpace(std::vector<double> rf_values, std::vector<double> cf_values,
              std::vector<double> vd_values);

  const std::vector<double>& rf_values() const noexcept { return rf_; }
  const std::vector<double>& cf_values() const noexcept { return cf_; }
  const std::vector<double>& vd_values() const noexcept { return vd_; }

  std::uint64_t cardinality() const noexcept {
    return static_cast<std::uint64_t>(rf_.size()) * cf_.size() * vd_.size();
  }

  std::size_t axis_size(std::size_t axis) const;

  DesignPoint at(const GridIndex& index) const;
  DesignPoint at(std::uint64_t flat) const { return at(unflatten(flat)); }

  std::uint64_t flatten(const GridIndex& index) const noexcept {
    return (static_cast<std::uint64_t>(index.rf) * cf_.size() + index.cf) * vd_.size() + index.vd;
  }
  GridIndex unflatten(std::uint64_t flat) const noexcept;

  /// Exact-match lookup of a point's axis indices.
  std::optional<GridIndex> index_of(const DesignPoint& point) const noexcept;
  bool contains(const DesignPoint& point) const noexcept { return index_of(point).has_value(); }

  /// Lazily generated stream of every point in enumeration order.
  auto enumerate() const {
    return std::views::iota(std::uint64_t{0}, cardinality()) |
           std::views::transform([this](std::uint64_t flat) { return at(flat); });
  }

  /// Independent uniform draw of each axis index (with replacement across calls).
  GridIndex sample_index(Rng& rng) const;
  DesignPoint sample_uniform(Rng& rng) const { return at(sample_index(rng)); }

 private:
  std::vector<double> rf_;
  std::vector<double> cf_;
  std::vector<double> vd_;
};

/// Uniform index in [0, n).
inline std::size_t uniform_index(Rng& rng, std::size_t n) {
  return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
}

}  // namespace pdopt
