#pragma once

#include <atomic>
#include <cstdint>
#include <optional>

namespace zodd {

/// Thread-safe count of oracle draws with an optional hard limit.
class BudgetCounter {
 public:
  explicit BudgetCounter(std::optional<std::uint64_t> limit = std::nullopt) noexcept
      : limit_(limit) {}

  BudgetCounter(const BudgetCounter&) = delete;
  BudgetCounter& operator=(const BudgetCounter&) = delete;

  /// Reserves `n` draws; throws BudgetError and consumes nothing if the limit
  /// would be exceeded.
  void consume(std::uint64_t n = 1);

  std::uint64_t consumed() const noexcept { return consumed_.load(std::memory_order_relaxed); }
  std::optional<std::uint64_t> limit() const noexcept { return limit_; }

  /// Draws left before the limit, or nullopt when unlimited.
  std::optional<std::uint64_t> remaining() const noexcept;

 private:
  std::atomic<std::uint64_t> consumed_{0};
  std::optional<std::uint64_t> limit_;
};

}  // namespace zodd
