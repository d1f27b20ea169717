#include "zodd/strategic_env.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "zodd/errors.hpp"

namespace zodd {
namespace {

// log(1 + exp(z)) without overflow.
double softplus(double z) {
  return z > 0.0 ? z + std::log1p(std::exp(-z)) : std::log1p(std::exp(z));
}

void require_classifier(const Point& x, const Vector& xi) {
  if (x.size() != xi.size() + 1) {
    throw ArgumentError("classifier has " + std::to_string(x.size()) + " entries, expected " +
                        std::to_string(xi.size() + 1));
  }
  if (!x.allFinite() || !xi.allFinite()) throw ArgumentError("non-finite classifier or features");
}

double score(const Point& x, const Vector& xi) {
  const Eigen::Index k = xi.size();
  return x.head(k).dot(xi) + x[k];
}

}  // namespace

Vector best_response(const Point& x, const Vector& xi_true, double reward) {
  require_classifier(x, xi_true);
  const double v = score(x, xi_true);
  if (v >= 0.0) return xi_true;
  const auto w = x.head(xi_true.size());
  const double norm = w.norm();
  if (norm == 0.0) throw DegenerateClassifier("classifier has no feature weights");
  const double delta = -v / norm;
  if (delta * delta >= reward) return xi_true;
  return xi_true + (delta / norm) * w;
}

double logistic_loss(const Point& x, const Vector& xi, int label) {
  require_classifier(x, xi);
  const double z = score(x, xi);
  return label != 0 ? softplus(-z) : softplus(z);
}

StrategicEnv::StrategicEnv(Population population, double reward)
    : population_(std::move(population)), reward_(reward) {
  if (population_.empty()) throw ArgumentError("population must not be empty");
  if (!(reward_ >= 0.0) || !std::isfinite(reward_)) throw ArgumentError("reward must be >= 0");
  features_ = static_cast<std::size_t>(population_.front().features.size());
  if (features_ == 0) throw ArgumentError("agents need at least one feature");
  for (const Agent& a : population_) {
    if (static_cast<std::size_t>(a.features.size()) != features_) {
      throw ArgumentError("agents have inconsistent feature counts");
    }
    if (a.label != 0 && a.label != 1) throw ArgumentError("labels must be 0 or 1");
    if (!a.features.allFinite()) throw ArgumentError("agent features must be finite");
  }
}

Vector StrategicEnv::reported_features(const Point& x, const Agent& agent) const {
  try {
    return best_response(x, agent.features, reward_);
  } catch (const DegenerateClassifier&) {
    return agent.features;
  }
}

double StrategicEnv::agent_loss(const Point& x, const Agent& agent) const {
  return logistic_loss(x, reported_features(x, agent), agent.label);
}

double StrategicEnv::draw(const Point& x, RngEngine& rng) const {
  require_point(x, dimension());
  const auto count = static_cast<double>(population_.size());
  const auto index = std::min(population_.size() - 1,
                              static_cast<std::size_t>(rng.uniform() * count));
  return agent_loss(x, population_[index]);
}

double StrategicEnv::objective(const Point& x) const {
  require_point(x, dimension());
  double total = 0.0;
  for (const Agent& a : population_) total += agent_loss(x, a);
  return total / static_cast<double>(population_.size());
}

ClassifierMetrics evaluate_classifier(const Point& x, const Population& population,
                                      bool strategic, double reward) {
  if (population.empty()) throw ArgumentError("population must not be empty");
  const std::size_t n = population.size();
  std::vector<double> scores(n);
  ClassifierMetrics out;
  std::size_t correct = 0;
  double loss = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const Agent& a = population[i];
    Vector xi = a.features;
    if (strategic) {
      try {
        xi = best_response(x, a.features, reward);
      } catch (const DegenerateClassifier&) {
      }
    }
    scores[i] = score(x, xi);
    loss += logistic_loss(x, xi, a.label);
    if ((scores[i] >= 0.0) == (a.label == 1)) ++correct;
  }
  out.accuracy = static_cast<double>(correct) / static_cast<double>(n);
  out.loss = loss / static_cast<double>(n);

  // Mann-Whitney U with average ranks for ties.
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return scores[a] < scores[b];
  });
  std::vector<double> rank(n);
  for (std::size_t i = 0; i < n;) {
    std::size_t j = i;
    while (j + 1 < n && scores[order[j + 1]] == scores[order[i]]) ++j;
    const double avg = 0.5 * static_cast<double>(i + j) + 1.0;
    for (std::size_t k = i; k <= j; ++k) rank[order[k]] = avg;
    i = j + 1;
  }
  double positives = 0.0;
  double rank_sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (population[i].label == 1) {
      positives += 1.0;
      rank_sum += rank[i];
    }
  }
  const double negatives = static_cast<double>(n) - positives;
  if (positives > 0.0 && negatives > 0.0) {
    out.auc = (rank_sum - positives * (positives + 1.0) / 2.0) / (positives * negatives);
  }
  return out;
}

std::pair<Population, Population> split_population(const Population& population,
                                                   double train_fraction) {
  if (!(train_fraction >= 0.0 && train_fraction <= 1.0)) {
    throw ArgumentError("train fraction must lie in [0, 1]");
  }
  const auto cut = static_cast<std::size_t>(
      std::llround(train_fraction * static_cast<double>(population.size())));
  return {Population(population.begin(), population.begin() + static_cast<std::ptrdiff_t>(cut)),
          Population(population.begin() + static_cast<std::ptrdiff_t>(cut), population.end())};
}

}  // namespace zodd
