#include "zodd/pricing_env.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include <boost/math/distributions/binomial.hpp>

#include "zodd/errors.hpp"

namespace zodd {
namespace {

Vector override_or(const std::optional<Vector>& v, Eigen::Index n, const Vector& fallback,
                   const char* name) {
  if (!v) return fallback;
  if (v->size() != n) throw ArgumentError(std::string(name) + " must have length n");
  return *v;
}

}  // namespace

PricingEnv::PricingEnv(Vector theta, Vector rho, std::size_t buyers)
    : PricingEnv(PricingParams{std::move(theta), std::move(rho), buyers, {}, {}, {}, {}}) {}

PricingEnv::PricingEnv(PricingParams params)
    : theta_(std::move(params.theta)), rho_(std::move(params.rho)), buyers_(params.buyers) {
  const Eigen::Index n = theta_.size();
  if (n == 0) throw ArgumentError("pricing environment needs at least one product");
  if (rho_.size() != n) throw ArgumentError("rho must have the same length as theta");
  if (!theta_.allFinite() || theta_.minCoeff() <= 0.0) {
    throw ArgumentError("reference prices must be positive and finite");
  }
  if (!rho_.allFinite() || rho_.minCoeff() < 0.0) throw ArgumentError("rho must be >= 0");
  if (buyers_ == 0) throw ArgumentError("buyer count must be at least 1");

  const double nd = static_cast<double>(n);
  const double md = static_cast<double>(buyers_);
  a0_ = params.a0.value_or(0.1 * nd);
  if (!(a0_ > 0.0) || !std::isfinite(a0_)) throw ArgumentError("a0 must be positive");
  gamma_ = (2.0 * std::numbers::pi / std::sqrt(6.0)) * theta_.cwiseInverse();
  lower_ = override_or(params.lower, n, Vector::Constant(n, 0.5 * md / nd), "lower");
  upper_ = override_or(params.upper, n, Vector::Constant(n, 1.5 * md / nd), "upper");
  w_ = override_or(params.w, n, rho_.cwiseProduct(theta_), "w");
  for (Eigen::Index i = 0; i < n; ++i) {
    if (!(lower_[i] >= 0.0) || !(upper_[i] >= lower_[i])) {
      throw ArgumentError("cost breakpoints must satisfy 0 <= l_i <= u_i");
    }
  }
}

ChoiceProbabilities PricingEnv::probabilities(const Point& x) const {
  require_point(x, dimension());
  const Vector z = gamma_.cwiseProduct(theta_ - x);
  const double log_a0 = std::log(a0_);
  const double shift = std::max(z.maxCoeff(), log_a0);
  const Vector e = (z.array() - shift).exp().matrix();
  const double e0 = std::exp(log_a0 - shift);
  const double total = e.sum() + e0;
  return ChoiceProbabilities{e / total, e0 / total};
}

double PricingEnv::cost(std::size_t item, double q) const {
  const auto i = static_cast<Eigen::Index>(item);
  const double w = w_[i];
  const double l = lower_[i];
  const double u = upper_[i];
  if (q <= l) return 2.0 * w * q;
  if (q <= u) return w * (q - l) + 2.0 * w * l;
  return 3.0 * w * (q - u) + w * (u - l) + 2.0 * w * l;
}

double PricingEnv::loss(const Point& x, const Eigen::VectorXi& counts) const {
  double f = 0.0;
  for (Eigen::Index i = 0; i < counts.size(); ++i) {
    const double q = counts[i];
    f += -x[i] * q + cost(static_cast<std::size_t>(i), q);
  }
  return f;
}

Eigen::VectorXi PricingEnv::sample_counts(const Point& x, RngEngine& rng) const {
  const ChoiceProbabilities p = probabilities(x);
  const Eigen::Index n = theta_.size();
  std::vector<double> cumulative(static_cast<std::size_t>(n));
  double acc = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    acc += p.items[i];
    cumulative[static_cast<std::size_t>(i)] = acc;
  }
  Eigen::VectorXi counts = Eigen::VectorXi::Zero(n);
  for (std::size_t b = 0; b < buyers_; ++b) {
    const double u = rng.uniform();
    const auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
    if (it != cumulative.end()) ++counts[it - cumulative.begin()];
  }
  return counts;
}

double PricingEnv::draw(const Point& x, RngEngine& rng) const {
  return loss(x, sample_counts(x, rng));
}

double PricingEnv::objective(const Point& x) const {
  const ChoiceProbabilities p = probabilities(x);
  const double md = static_cast<double>(buyers_);
  double value = 0.0;
  for (Eigen::Index i = 0; i < theta_.size(); ++i) {
    const double pi = std::clamp(p.items[i], 0.0, 1.0);
    value -= md * x[i] * pi;
    const boost::math::binomial_distribution<double> marginal(md, pi);
    for (std::size_t k = 0; k <= buyers_; ++k) {
      const double mass = boost::math::pdf(marginal, static_cast<double>(k));
      if (mass > 0.0) value += mass * cost(static_cast<std::size_t>(i), static_cast<double>(k));
    }
  }
  return value;
}

}  // namespace zodd
