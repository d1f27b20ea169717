#pragma once

#include <cstddef>
#include <optional>
#include <string_view>

#include "zodd/estimators.hpp"
#include "zodd/types.hpp"

namespace zodd {

enum class Regime { grad_lipschitz, hessian_lipschitz };

std::string_view to_string(Regime regime) noexcept;
/// Parses "grad" / "grad_lipschitz" or "hessian" / "hessian_lipschitz".
Regime parse_regime(std::string_view text);

/// Resolves the unspecified Theta(.) constants of the schedules.
struct PlannerConstants {
  double c_mu = 1.0;
  double c_m = 1.0;
  /// Explicit iteration constant. When unset: 16 M initial_gap if the gap is
  /// known, else 1.
  std::optional<double> c_T;
  /// F(x_0) - F*, when known.
  std::optional<double> initial_gap;
  /// Reject epsilon outside the range the convergence results assume.
  bool enforce_epsilon_range = true;

  double resolved_c_T(double M) const;
};

/// Step size, iteration count and estimator knobs for one descent run.
struct ParameterPlan {
  EstimatorKind kind = EstimatorKind::sphere;
  Regime regime = Regime::grad_lipschitz;
  double mu = 0.1;
  std::size_t N = 1;
  std::size_t m = 1;
  double eta = 0.25;
  std::size_t T = 1;
  /// Smoothness constant the step size was derived from, when known.
  std::optional<double> M;
  /// Target accuracy, when produced by the planner.
  std::optional<double> epsilon;

  EstimatorConfig estimator() const;
  /// Throws ArgumentError unless mu, N, m, T, eta are positive and, when M is
  /// known, eta <= 1/(4M).
  void validate() const;
};

/// Schedules for target accuracy epsilon:
///
///   coordinate, grad:    m = ceil(c_m d^2 eps^-4),   mu = (2 sigma^2 / (m M^2))^(1/4)
///   coordinate, hessian: m = ceil(c_m d^1.5 eps^-3), mu = (18 sigma^2 / (m H^2))^(1/6)
///   sphere, grad:        N = ceil(d^2 eps^-4), mu = c_mu eps
///   sphere, hessian:     N = ceil(d^2 eps^-3), mu = c_mu eps^(1/2)
///   gaussian, grad:      N = ceil(d^2 eps^-4), mu = c_mu eps d^(-1/2)
///   gaussian, hessian:   N = ceil(d^2 eps^-3), mu = c_mu eps^(1/2) d^(-1/2)
///
/// with m = 1 for the random-direction kinds, eta = 1/(4M) and
/// T = ceil(c_T eps^-2). epsilon must lie in (0, 1/3], or (0, 1/4] for
/// gaussian/hessian, unless the range check is disabled.
ParameterPlan plan_parameters(EstimatorKind kind, Regime regime, double epsilon,
                              std::size_t dimension, double sigma, double M,
                              std::optional<double> H, const PlannerConstants& constants = {});

/// Largest epsilon accepted for (kind, regime).
double epsilon_limit(EstimatorKind kind, Regime regime);

/// Total sample-complexity order, e.g. "O(d^2 eps^-6)".
std::string_view complexity_tag(EstimatorKind kind, Regime regime);

/// ceil(v) that ignores floating-point excess below a 1e-9 relative margin.
std::size_t tolerant_ceil(double v);

struct SmoothnessPair {
  double M = 0.0;
  std::optional<double> H;
};

/// Operator 2-norm by power iteration on A^T A (1e-10 relative tolerance,
/// at most 10^4 steps; NumericalError otherwise).
double operator_norm(const Matrix& A);

/// Smoothness constants for location-scale families xi = nu + A x:
/// M = sqrt(beta^2 (1 + |A|^2) max(1, |A|^2)),
/// H = sqrt(rho^2 (1 + |A|^2) max(1, |A|^4)) when rho is given.
SmoothnessPair smoothness_from_location_scale(const Matrix& A, double beta,
                                              std::optional<double> rho = std::nullopt);

}  // namespace zodd
