#pragma once

#include <cstdint>
#include <functional>
#include <optional>

#include "zodd/budget.hpp"
#include "zodd/environment.hpp"
#include "zodd/rng.hpp"
#include "zodd/types.hpp"

namespace zodd {

/// Source of scalar evaluations f(x, xi), xi ~ D(x), with budget accounting.
///
/// Every `sample` call consumes exactly one draw from the budget before the
/// evaluation happens. Each call owns its RngStream, so repeated calls with
/// different streams are independent draws. Safe for concurrent use.
class SampleOracle {
 public:
  explicit SampleOracle(std::optional<std::uint64_t> limit = std::nullopt) : budget_(limit) {}
  virtual ~SampleOracle() = default;

  SampleOracle(const SampleOracle&) = delete;
  SampleOracle& operator=(const SampleOracle&) = delete;

  double sample(const Point& x, const RngStream& stream);

  virtual std::size_t dimension() const = 0;

  BudgetCounter& budget() noexcept { return budget_; }
  const BudgetCounter& budget() const noexcept { return budget_; }

 protected:
  virtual double evaluate(const Point& x, RngEngine& rng) const = 0;

 private:
  BudgetCounter budget_;
};

/// Oracle backed by an Environment. The environment must outlive the oracle.
class EnvironmentOracle final : public SampleOracle {
 public:
  explicit EnvironmentOracle(const Environment& env,
                             std::optional<std::uint64_t> limit = std::nullopt)
      : SampleOracle(limit), env_(env) {}

  std::size_t dimension() const override { return env_.dimension(); }
  const Environment& environment() const noexcept { return env_; }

 protected:
  double evaluate(const Point& x, RngEngine& rng) const override { return env_.draw(x, rng); }

 private:
  const Environment& env_;
};

/// Oracle backed by an arbitrary callable; handy for synthetic objectives.
class FunctionOracle final : public SampleOracle {
 public:
  using Fn = std::function<double(const Point&, RngEngine&)>;

  FunctionOracle(std::size_t dimension, Fn fn,
                 std::optional<std::uint64_t> limit = std::nullopt)
      : SampleOracle(limit), dimension_(dimension), fn_(std::move(fn)) {}

  std::size_t dimension() const override { return dimension_; }

 protected:
  double evaluate(const Point& x, RngEngine& rng) const override { return fn_(x, rng); }

 private:
  std::size_t dimension_;
  Fn fn_;
};

}  // namespace zodd
