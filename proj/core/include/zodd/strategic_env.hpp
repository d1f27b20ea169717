#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "zodd/environment.hpp"

namespace zodd {

/// One agent: true features and a label in {0, 1}.
struct Agent {
  Vector features;
  int label = 0;
};

using Population = std::vector<Agent>;

/// Agent best response to the linear classifier x = (w, b):
/// argmax_xi  reward * 1[w^T xi + b >= 0] - ||xi - xi_true||^2.
///
/// Agents already classified positive stay. Otherwise, with delta the distance
/// to the boundary, they move onto it when delta^2 < reward and stay when
/// delta^2 >= reward. Throws DegenerateClassifier when w = 0 and b < 0.
Vector best_response(const Point& x, const Vector& xi_true, double reward = 2.0);

/// Cross-entropy -[L log s(z) + (1-L) log(1-s(z))], z = w^T xi + b,
/// evaluated through softplus.
double logistic_loss(const Point& x, const Vector& xi, int label);

/// Strategic classification: draws an agent uniformly, lets it best-respond,
/// returns the logistic loss at the reported features. Decision dimension is
/// feature count + 1 (intercept last).
class StrategicEnv final : public Environment {
 public:
  explicit StrategicEnv(Population population, double reward = 2.0);

  std::string name() const override { return "strategic"; }
  std::size_t dimension() const override { return features_ + 1; }
  double draw(const Point& x, RngEngine& rng) const override;

  /// Population mean of the post-response loss.
  bool has_exact_objective() const override { return true; }
  double objective(const Point& x) const override;

  /// Loss of one agent after its best response. A classifier with no feature
  /// weights induces no manipulation.
  double agent_loss(const Point& x, const Agent& agent) const;
  /// Reported features of one agent (no manipulation when w = 0).
  Vector reported_features(const Point& x, const Agent& agent) const;

  const Population& population() const noexcept { return population_; }
  double reward() const noexcept { return reward_; }

 private:
  Population population_;
  double reward_;
  std::size_t features_;
};

struct ClassifierMetrics {
  double auc = 0.5;
  double accuracy = 0.0;
  double loss = 0.0;
};

/// AUC (Mann-Whitney, ties counted half), accuracy at score >= 0 and mean
/// logistic loss. With `strategic` set the agents best-respond first.
ClassifierMetrics evaluate_classifier(const Point& x, const Population& population,
                                      bool strategic, double reward = 2.0);

/// First round(fraction * size) agents form the training set.
std::pair<Population, Population> split_population(const Population& population,
                                                   double train_fraction);

}  // namespace zodd
