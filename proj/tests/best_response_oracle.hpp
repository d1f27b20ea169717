#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "zodd/rng.hpp"

namespace zodd::testing {

// Agent utility: reward for a non-negative score minus squared movement.
inline double agent_utility(const Eigen::VectorXd& x, const Eigen::VectorXd& xi,
                            const Eigen::VectorXd& xi_true, double reward) {
  const Eigen::Index k = xi.size();
  const double score = x.head(k).dot(xi) + x[k];
  return (score >= -1e-9 ? reward : 0.0) - (xi - xi_true).squaredNorm();
}

struct ResponseInstance {
  Eigen::VectorXd x;        // weights (11) and intercept
  Eigen::VectorXd xi_true;  // 11 features
  int active[2] = {0, 1};
};

// Classifier with exactly two non-zero feature weights. Instances whose
// squared distance to the boundary lies within 1e-2 of the reward are
// redrawn, since the argmax is not unique there.
inline ResponseInstance random_instance(zodd::RngEngine& rng, double reward) {
  std::normal_distribution<double> normal;
  for (;;) {
    ResponseInstance in;
    in.x = Eigen::VectorXd::Zero(12);
    in.xi_true = Eigen::VectorXd::Zero(11);
    for (Eigen::Index i = 0; i < 11; ++i) in.xi_true[i] = normal(rng);
    in.active[0] = static_cast<int>(rng() % 11);
    do {
      in.active[1] = static_cast<int>(rng() % 11);
    } while (in.active[1] == in.active[0]);
    in.x[in.active[0]] = normal(rng);
    in.x[in.active[1]] = normal(rng);
    in.x[11] = 1.5 * normal(rng);
    const double norm = std::hypot(in.x[in.active[0]], in.x[in.active[1]]);
    if (norm < 0.2) continue;
    const double v = in.x.head(11).dot(in.xi_true) + in.x[11];
    const double delta = -v / norm;
    if (v < 0.0 && std::abs(delta * delta - reward) < 1e-2) continue;
    return in;
  }
}

struct GridArgmax {
  Eigen::VectorXd xi;
  double utility = -INFINITY;
};

// Exhaustive search over a square grid of half-width `radius` and spacing `h`
// centred on xi_true, in the plane spanned by orthonormal vectors (b1, b2).
inline GridArgmax grid_argmax(const ResponseInstance& in, double reward,
                              const Eigen::VectorXd& b1, const Eigen::VectorXd& b2,
                              double radius = 1.5, double h = 1e-3) {
  const int steps = static_cast<int>(std::lround(radius / h));
  const Eigen::Index k = in.xi_true.size();
  const Eigen::VectorXd w = in.x.head(k);
  const double base_score = w.dot(in.xi_true) + in.x[k];
  const double w1 = w.dot(b1);
  const double w2 = w.dot(b2);
  GridArgmax best;
  double best_s = 0.0;
  double best_t = 0.0;
  for (int i = -steps; i <= steps; ++i) {
    const double s = i * h;
    for (int j = -steps; j <= steps; ++j) {
      const double t = j * h;
      const double score = base_score + s * w1 + t * w2;
      const double u = (score >= -1e-9 ? reward : 0.0) - (s * s + t * t);
      if (u > best.utility) {
        best.utility = u;
        best_s = s;
        best_t = t;
      }
    }
  }
  best.xi = in.xi_true + best_s * b1 + best_t * b2;
  return best;
}

}  // namespace zodd::testing
