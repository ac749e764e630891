#include "pdopt/cached_evaluator.hpp"

#include <algorithm>
#include <thread>

namespace pdopt {

CachedEvaluator::CachedEvaluator(const DesignSpace& space, const Evaluator& base)
    : space_(space),
      base_(base),
      values_(space.cardinality()),
      ready_(std::make_unique<std::once_flag[]>(space.cardinality())) {}

const PerformanceVariables& CachedEvaluator::cell(std::uint64_t flat) const {
  std::call_once(ready_[flat], [&] { values_[flat] = base_.evaluate(space_.at(flat)); });
  return values_[flat];
}

const PerformanceVariables& CachedEvaluator::at(const GridIndex& index) const {
  return cell(space_.flatten(index));
}

PerformanceVariables CachedEvaluator::evaluate(const DesignPoint& point) const {
  if (auto idx = space_.index_of(point)) return at(*idx);
  return base_.evaluate(point);
}

void CachedEvaluator::prefill(unsigned threads) const {
  const std::uint64_t n = space_.cardinality();
  threads = std::max(1u, threads);
  if (threads == 1) {
    for (std::uint64_t i = 0; i < n; ++i) cell(i);
    return;
  }
  std::vector<std::jthread> workers;
  for (unsigned t = 0; t < threads; ++t)
    workers.emplace_back([this, t, threads, n] {
      for (std::uint64_t i = t; i < n; i += threads) cell(i);
    });
}

}  // namespace pdopt
