#include "zodd/budget.hpp"

#include <cmath>
#include <string>

#include "zodd/errors.hpp"
#include "zodd/types.hpp"

namespace zodd {

void BudgetCounter::consume(std::uint64_t n) {
  std::uint64_t current = consumed_.load(std::memory_order_relaxed);
  if (!limit_) {
    consumed_.fetch_add(n, std::memory_order_relaxed);
    return;
  }
  do {
    if (current + n > *limit_) throw BudgetError(current, *limit_);
  } while (!consumed_.compare_exchange_weak(current, current + n, std::memory_order_relaxed));
}

std::optional<std::uint64_t> BudgetCounter::remaining() const noexcept {
  if (!limit_) return std::nullopt;
  return *limit_ - consumed();
}

void require_point(const Point& x, std::size_t dimension) {
  if (dimension == 0) throw ArgumentError("dimension must be at least 1");
  if (static_cast<std::size_t>(x.size()) != dimension) {
    throw ArgumentError("point has length " + std::to_string(x.size()) + ", expected " +
                        std::to_string(dimension));
  }
  if (!x.allFinite()) throw ArgumentError("point has non-finite entries");
}

}  // namespace zodd
