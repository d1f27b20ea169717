#pragma once

#include <cstdint>
#include <optional>

#include "zodd/environment.hpp"

namespace zodd {

/// F(x) = 1/2 x^T A x + b^T x observed through f(x, xi) = xi, xi ~ N(F(x), sigma^2).
///
/// A must be symmetric positive semi-definite. M is the largest eigenvalue of
/// A and H = 0. F* and the minimiser are available when A is positive definite.
class QuadraticEnv final : public Environment {
 public:
  QuadraticEnv(Matrix A, Vector b, double sigma);

  std::string name() const override { return "quadratic"; }
  std::size_t dimension() const override { return static_cast<std::size_t>(b_.size()); }
  double draw(const Point& x, RngEngine& rng) const override;

  bool has_exact_objective() const override { return true; }
  double objective(const Point& x) const override;
  bool has_gradient() const override { return true; }
  Vector gradient(const Point& x) const override;

  std::optional<double> minimum_value() const override { return f_star_; }
  std::optional<SmoothnessConstants> constants() const override;

  std::optional<Vector> minimizer() const { return argmin_; }
  const Matrix& A() const noexcept { return A_; }
  const Vector& b() const noexcept { return b_; }
  double sigma() const noexcept { return sigma_; }
  double smoothness() const noexcept { return lambda_max_; }

 private:
  Matrix A_;
  Vector b_;
  double sigma_;
  double lambda_max_ = 0.0;
  std::optional<double> f_star_;
  std::optional<Vector> argmin_;
};

struct QuadraticSpec {
  std::size_t dimension = 5;
  double sigma = 1.0;
  double lambda_min = 0.1;
  double lambda_max = 1.0;
  bool random_linear_term = false;
  std::uint64_t seed = 0;
};

/// A = Q diag(lambda) Q^T with eigenvalues evenly spaced in
/// [lambda_min, lambda_max] and Q a seeded random orthogonal matrix.
/// b is zero unless random_linear_term is set (then standard normal).
QuadraticEnv make_quadratic_env(const QuadraticSpec& spec);

}  // namespace zodd
