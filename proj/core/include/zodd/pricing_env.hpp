#pragma once

#include <cstddef>
#include <optional>

#include "zodd/environment.hpp"

namespace zodd {

/// Inputs of the pricing simulator. Unset overrides take the defaults
/// a0 = 0.1 n, l_i = 0.5 m/n, u_i = 1.5 m/n, w_i = rho_i theta_i.
struct PricingParams {
  Vector theta;  // reference prices, > 0
  Vector rho;    // cost rates
  std::size_t buyers = 120;
  std::optional<double> a0;
  std::optional<Vector> lower;
  std::optional<Vector> upper;
  std::optional<Vector> w;
};

struct ChoiceProbabilities {
  Vector items;        // p_i(x), i = 1..n
  double opt_out = 0;  // p_0(x)
};

/// Multinomial-logit demand with a piecewise-linear production cost.
///
/// Each of the m buyers independently picks item i with probability
/// p_i(x) = exp(g_i (theta_i - x_i)) / (a0 + sum_j exp(g_j (theta_j - x_j))),
/// g_i = 2 pi / (sqrt(6) theta_i), or nothing with the remaining mass.
/// With xi_i the number of buyers of item i,
/// f(x, xi) = -sum_i x_i xi_i + sum_i c_i(xi_i).
class PricingEnv final : public Environment {
 public:
  explicit PricingEnv(PricingParams params);
  PricingEnv(Vector theta, Vector rho, std::size_t buyers = 120);

  std::string name() const override { return "pricing"; }
  std::size_t dimension() const override { return static_cast<std::size_t>(theta_.size()); }
  double draw(const Point& x, RngEngine& rng) const override;

  /// Exact E[f] using Binomial(m, p_i) marginals.
  bool has_exact_objective() const override { return true; }
  double objective(const Point& x) const override;

  /// Computed through a shifted log-sum-exp; never overflows.
  ChoiceProbabilities probabilities(const Point& x) const;
  /// Purchase counts per item for one simulated market.
  Eigen::VectorXi sample_counts(const Point& x, RngEngine& rng) const;
  double cost(std::size_t item, double quantity) const;
  double loss(const Point& x, const Eigen::VectorXi& counts) const;

  std::size_t buyers() const noexcept { return buyers_; }
  double a0() const noexcept { return a0_; }
  const Vector& theta() const noexcept { return theta_; }
  const Vector& rho() const noexcept { return rho_; }
  const Vector& gamma() const noexcept { return gamma_; }
  const Vector& lower() const noexcept { return lower_; }
  const Vector& upper() const noexcept { return upper_; }
  const Vector& w() const noexcept { return w_; }

 private:
  Vector theta_;
  Vector rho_;
  std::size_t buyers_;
  double a0_;
  Vector gamma_;
  Vector lower_;
  Vector upper_;
  Vector w_;
};

}  // namespace zodd
