#pragma once

#include <cstdint>
#include <memory>
#include <mutex>
#include <vector>

#include "pdopt/circuit_model.hpp"
#include "pdopt/design_space.hpp"

namespace pdopt {

/// Memoizes a pure evaluator over the points of one DesignSpace.
///
/// Each grid cell is computed at most once (std::call_once per cell), so the
/// cache can be shared by concurrent searches. Points outside the grid are
/// forwarded to the wrapped evaluator uncached. The wrapped evaluator and the
/// space must outlive the cache.
class CachedEvaluator final : public Evaluator {
 public:
  CachedEvaluator(const DesignSpace& space, const Evaluator& base);

  PerformanceVariables evaluate(const DesignPoint& point) const override;

  /// Cached lookup by grid index.
  const PerformanceVariables& at(const GridIndex& index) const;

  /// Computes every cell, optionally across `threads` worker threads.
  void prefill(unsigned threads = 1) const;

  const DesignSpace& space() const noexcept { return space_; }

 private:
  const PerformanceVariables& cell(std::uint64_t flat) const;

  const DesignSpace& space_;
  const Evaluator& base_;
  mutable std::vector<PerformanceVariables> values_;
  mutable std::unique_ptr<std::once_flag[]> ready_;
};

}  // namespace pdopt
