#pragma once

// d-dimensional separable quadratic landscape on an integer grid:
//   merit(i) = max(0, 1 - sum_k ((i_k - c) / h)^2)
// with every axis of size 2c + 1 and the optimum (merit 1) at the centre.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace pdopt::oracle {

struct SeparableQuadratic {
  std::size_t dims = 4;
  std::size_t center = 30;  ///< axis size is 2 * center + 1
  double half_width = 30.0;

  std::vector<std::size_t> axis_sizes() const;
  double merit(std::span<const std::size_t> index) const;
};

/// Number of grid points per value of s = sum_k (i_k - c)^2, obtained by
/// visiting every grid point.
std::vector<std::uint64_t> tabulate_offsets(const SeparableQuadratic& land);

/// eps95 of the best of n uniform draws implied by the tabulation: the
/// smallest eps with 1 - (1 - q(eps))^n >= 0.95, q the grid fraction
/// within eps of the optimum.
double predicted_eps95(const SeparableQuadratic& land, const std::vector<std::uint64_t>& counts,
                       std::uint64_t n);

}  // namespace pdopt::oracle
