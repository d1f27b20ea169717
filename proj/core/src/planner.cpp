#include "zodd/planner.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "zodd/errors.hpp"

namespace zodd {
namespace {

void require_positive(double v, const char* name) {
  if (!(v > 0.0) || !std::isfinite(v)) {
    throw ArgumentError(std::string(name) + " must be positive and finite");
  }
}

}  // namespace

std::string_view to_string(Regime regime) noexcept {
  return regime == Regime::grad_lipschitz ? "grad_lipschitz" : "hessian_lipschitz";
}

Regime parse_regime(std::string_view text) {
  if (text == "grad" || text == "grad_lipschitz") return Regime::grad_lipschitz;
  if (text == "hessian" || text == "hessian_lipschitz") return Regime::hessian_lipschitz;
  throw ArgumentError("unknown regime '" + std::string(text) + "'");
}

double PlannerConstants::resolved_c_T(double M) const {
  if (c_T) return *c_T;
  if (initial_gap && *initial_gap > 0.0) return 16.0 * M * *initial_gap;
  return 1.0;
}

EstimatorConfig ParameterPlan::estimator() const {
  EstimatorConfig cfg;
  cfg.kind = kind;
  cfg.mu = mu;
  cfg.N = N;
  cfg.m = m;
  return cfg;
}

void ParameterPlan::validate() const {
  estimator().validate();
  require_positive(eta, "step size eta");
  if (T == 0) throw ArgumentError("iteration count T must be at least 1");
  if (M) {
    require_positive(*M, "M");
    if (eta > (1.0 + 1e-12) / (4.0 * *M)) {
      throw ArgumentError("step size " + std::to_string(eta) + " exceeds 1/(4M) = " +
                          std::to_string(1.0 / (4.0 * *M)));
    }
  }
}

std::size_t tolerant_ceil(double v) {
  if (!std::isfinite(v) || v < 0.0) throw ArgumentError("cannot take ceiling of a negative value");
  if (v >= 1.8e19) throw ArgumentError("schedule value overflows");
  return static_cast<std::size_t>(std::ceil(v - 1e-9 * std::max(1.0, v)));
}

double epsilon_limit(EstimatorKind kind, Regime regime) {
  if (kind == EstimatorKind::gaussian && regime == Regime::hessian_lipschitz) return 0.25;
  return 1.0 / 3.0;
}

std::string_view complexity_tag(EstimatorKind kind, Regime regime) {
  const bool grad = regime == Regime::grad_lipschitz;
  switch (kind) {
    case EstimatorKind::coordinate: return grad ? "O(d^3 eps^-6)" : "O(d^5/2 eps^-5)";
    case EstimatorKind::sphere:
    case EstimatorKind::gaussian: return grad ? "O(d^2 eps^-6)" : "O(d^2 eps^-5)";
    case EstimatorKind::one_point: break;
  }
  throw ArgumentError("no schedule is defined for the one-point estimator");
}

ParameterPlan plan_parameters(EstimatorKind kind, Regime regime, double epsilon,
                              std::size_t dimension, double sigma, double M,
                              std::optional<double> H, const PlannerConstants& constants) {
  if (kind == EstimatorKind::one_point) {
    throw ArgumentError("no schedule is defined for the one-point estimator");
  }
  if (dimension == 0) throw ArgumentError("dimension must be at least 1");
  require_positive(epsilon, "epsilon");
  const double limit = epsilon_limit(kind, regime);
  if (constants.enforce_epsilon_range && epsilon > limit * (1.0 + 1e-12)) {
    throw ArgumentError("epsilon " + std::to_string(epsilon) + " outside (0, " +
                        std::to_string(limit) + "] for " + std::string(to_string(kind)) + "/" +
                        std::string(to_string(regime)));
  }
  require_positive(sigma, "sigma");
  require_positive(M, "M");
  require_positive(constants.c_mu, "c_mu");
  require_positive(constants.c_m, "c_m");
  const double c_T = constants.resolved_c_T(M);
  require_positive(c_T, "c_T");
  const bool hessian = regime == Regime::hessian_lipschitz;
  if (hessian) {
    if (!H) throw ArgumentError("hessian regime requires H");
    require_positive(*H, "H");
  }

  const double d = static_cast<double>(dimension);
  ParameterPlan plan;
  plan.kind = kind;
  plan.regime = regime;
  plan.epsilon = epsilon;
  plan.M = M;
  plan.eta = 1.0 / (4.0 * M);
  plan.T = std::max<std::size_t>(1, tolerant_ceil(c_T * std::pow(epsilon, -2.0)));

  switch (kind) {
    case EstimatorKind::coordinate: {
      plan.N = dimension;
      const double s2 = sigma * sigma;
      if (hessian) {
        plan.m = tolerant_ceil(constants.c_m * std::pow(d, 1.5) * std::pow(epsilon, -3.0));
        plan.mu = std::pow(18.0 * s2 / (static_cast<double>(plan.m) * *H * *H), 1.0 / 6.0);
      } else {
        plan.m = tolerant_ceil(constants.c_m * d * d * std::pow(epsilon, -4.0));
        plan.mu = std::pow(2.0 * s2 / (static_cast<double>(plan.m) * M * M), 0.25);
      }
      break;
    }
    case EstimatorKind::sphere:
    case EstimatorKind::gaussian: {
      plan.m = 1;
      plan.N = tolerant_ceil(d * d * std::pow(epsilon, hessian ? -3.0 : -4.0));
      plan.mu = constants.c_mu * (hessian ? std::sqrt(epsilon) : epsilon);
      if (kind == EstimatorKind::gaussian) plan.mu /= std::sqrt(d);
      break;
    }
    case EstimatorKind::one_point: break;
  }
  plan.m = std::max<std::size_t>(plan.m, 1);
  plan.N = std::max<std::size_t>(plan.N, 1);
  plan.validate();
  return plan;
}

double operator_norm(const Matrix& A) {
  if (A.size() == 0) throw ArgumentError("operator_norm of an empty matrix");
  if (!A.allFinite()) throw NumericalError("operator_norm: non-finite entries");
  const Matrix G = A.transpose() * A;
  if (G.cwiseAbs().maxCoeff() == 0.0) return 0.0;
  // A fixed, generic start vector keeps the result deterministic and avoids
  // starting orthogonal to the top singular vector in practice.
  Vector v(G.cols());
  for (Eigen::Index i = 0; i < v.size(); ++i) v[i] = 1.0 + 0.1 * std::sin(1.0 + i);
  v.normalize();
  double lambda = 0.0;
  for (int step = 0; step < 10000; ++step) {
    Vector w = G * v;
    const double norm = w.norm();
    if (norm == 0.0) return 0.0;
    const double next = v.dot(w);
    w /= norm;
    if (step > 0 && std::abs(next - lambda) <= 1e-10 * std::abs(next)) {
      return std::sqrt(std::max(next, 0.0));
    }
    lambda = next;
    v = w;
  }
  throw NumericalError("operator_norm: power iteration did not converge in 10^4 steps");
}

SmoothnessPair smoothness_from_location_scale(const Matrix& A, double beta,
                                              std::optional<double> rho) {
  require_positive(beta, "beta");
  if (rho && !(*rho >= 0.0)) throw ArgumentError("rho must be non-negative");
  const double a = operator_norm(A);
  const double a2 = a * a;
  SmoothnessPair out;
  out.M = std::sqrt(beta * beta * (1.0 + a2) * std::max(1.0, a2));
  if (rho) out.H = std::sqrt(*rho * *rho * (1.0 + a2) * std::max(1.0, a2 * a2));
  return out;
}

}  // namespace zodd
