#include "separable.hpp"

#include <cmath>
#include <functional>

namespace pdopt::oracle {

std::vector<std::size_t> SeparableQuadratic::axis_sizes() const {
  return std::vector<std::size_t>(dims, 2 * center + 1);
}

double SeparableQuadratic::merit(std::span<const std::size_t> index) const {
  double sum = 0.0;
  for (std::size_t k : index) {
    const double u = (static_cast<double>(k) - static_cast<double>(center)) / half_width;
    sum += u * u;
  }
  return sum >= 1.0 ? 0.0 : 1.0 - sum;
}

std::vector<std::uint64_t> tabulate_offsets(const SeparableQuadratic& land) {
  const std::size_t n = 2 * land.center + 1;
  std::vector<std::uint64_t> counts(land.dims * land.center * land.center + 1, 0);
  std::vector<std::size_t> idx(land.dims, 0);

  std::function<void(std::size_t, std::size_t)> visit = [&](std::size_t axis, std::size_t s) {
    if (axis == land.dims) {
      ++counts[s];
      return;
    }
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t d = i > land.center ? i - land.center : land.center - i;
      visit(axis + 1, s + d * d);
    }
  };
  visit(0, 0);
  return counts;
}

double predicted_eps95(const SeparableQuadratic& land, const std::vector<std::uint64_t>& counts,
                       std::uint64_t n) {
  double total = 0.0;
  for (auto c : counts) total += static_cast<double>(c);
  const double h2 = land.half_width * land.half_width;

  double within = 0.0;
  for (std::size_t s = 0; s < counts.size(); ++s) {
    within += static_cast<double>(counts[s]);
    const double eps = std::min(100.0, 100.0 * static_cast<double>(s) / h2);
    const double q = within / total;
    if (1.0 - std::pow(1.0 - q, static_cast<double>(n)) >= 0.95) return eps;
  }
  return 100.0;
}

}  // namespace pdopt::oracle
