#pragma once

#include <cstddef>
#include <optional>
#include <string>

#include "zodd/rng.hpp"
#include "zodd/types.hpp"

namespace zodd {

/// Regularity constants of F: noise bound sigma, smoothness M and optional
/// Hessian-Lipschitz constant H.
struct SmoothnessConstants {
  double sigma = 0.0;
  double M = 0.0;
  std::optional<double> H;
};

/// A decision-dependent distribution D(x) paired with a loss f(x, xi).
///
/// Implementations are immutable after construction; `draw` is safe to call
/// concurrently with distinct engines. Analytic accessors are optional and
/// throw UnsupportedEnvironment when absent.
class Environment {
 public:
  virtual ~Environment() = default;

  virtual std::string name() const = 0;
  virtual std::size_t dimension() const = 0;

  /// One realisation of f(x, xi) with xi ~ D(x).
  virtual double draw(const Point& x, RngEngine& rng) const = 0;

  virtual bool has_exact_objective() const { return false; }
  /// F(x) = E[f(x, xi)].
  virtual double objective(const Point& x) const;

  virtual bool has_gradient() const { return false; }
  virtual Vector gradient(const Point& x) const;

  /// inf F, when known.
  virtual std::optional<double> minimum_value() const { return std::nullopt; }
  virtual std::optional<SmoothnessConstants> constants() const { return std::nullopt; }
};

}  // namespace zodd
