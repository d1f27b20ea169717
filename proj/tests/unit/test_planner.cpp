#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include <Eigen/SVD>

#include "zodd/errors.hpp"
#include "zodd/planner.hpp"

namespace {

using namespace zodd;

TEST(Planner, CoordinateGradMuFromBatch) {
  // d = 1, eps = 1/3 gives d^2 eps^-4 = 81, so c_m = 2/81 forces m = 2.
  PlannerConstants c;
  c.c_m = 2.0 / 81.0;
  const auto plan = plan_parameters(EstimatorKind::coordinate, Regime::grad_lipschitz, 1.0 / 3.0,
                                    1, 1.0, 1.0, std::nullopt, c);
  EXPECT_EQ(plan.m, 2u);
  EXPECT_DOUBLE_EQ(plan.mu, 1.0);
  EXPECT_EQ(plan.N, 1u);
}

TEST(Planner, SphereGradSchedule) {
  const auto plan =
      plan_parameters(EstimatorKind::sphere, Regime::grad_lipschitz, 0.1, 3, 1.0, 1.0, std::nullopt);
  EXPECT_EQ(plan.N, 90000u);
  EXPECT_EQ(plan.m, 1u);
  EXPECT_EQ(plan.T, 100u);
  EXPECT_DOUBLE_EQ(plan.eta, 0.25);
  EXPECT_DOUBLE_EQ(plan.mu, 0.1);
  EXPECT_EQ(complexity_tag(plan.kind, plan.regime), "O(d^2 eps^-6)");
}

TEST(Planner, GaussianHessianSchedule) {
  const auto plan = plan_parameters(EstimatorKind::gaussian, Regime::hessian_lipschitz, 0.25, 4,
                                    1.0, 1.0, 1.0);
  EXPECT_EQ(plan.N, 1024u);
  EXPECT_DOUBLE_EQ(plan.mu, 0.25);
  EXPECT_EQ(plan.m, 1u);
  EXPECT_EQ(plan.T, 16u);
}

TEST(Planner, CoordinateHessianSchedule) {
  const auto plan = plan_parameters(EstimatorKind::coordinate, Regime::hessian_lipschitz, 0.1, 4,
                                    1.0, 1.0, 1.0);
  EXPECT_EQ(plan.m, 8000u);
  EXPECT_NEAR(plan.mu, std::pow(18.0 / 8000.0, 1.0 / 6.0), 1e-15);
  EXPECT_EQ(plan.N, 4u);
  EXPECT_EQ(complexity_tag(plan.kind, plan.regime), "O(d^5/2 eps^-5)");
}

TEST(Planner, SphereHessianAndGaussianGrad) {
  const auto sph = plan_parameters(EstimatorKind::sphere, Regime::hessian_lipschitz, 0.25, 2, 1.0,
                                   1.0, 2.0);
  EXPECT_EQ(sph.N, 256u);
  EXPECT_DOUBLE_EQ(sph.mu, 0.5);
  const auto ga =
      plan_parameters(EstimatorKind::gaussian, Regime::grad_lipschitz, 0.2, 4, 1.0, 1.0, std::nullopt);
  EXPECT_EQ(ga.N, 10000u);
  EXPECT_DOUBLE_EQ(ga.mu, 0.1);
}

TEST(Planner, EpsilonRange) {
  EXPECT_THROW(plan_parameters(EstimatorKind::sphere, Regime::grad_lipschitz, 0.4, 3, 1.0, 1.0,
                               std::nullopt),
               ArgumentError);
  EXPECT_NO_THROW(plan_parameters(EstimatorKind::sphere, Regime::grad_lipschitz, 1.0 / 3.0, 3, 1.0,
                                  1.0, std::nullopt));
  EXPECT_THROW(plan_parameters(EstimatorKind::gaussian, Regime::hessian_lipschitz, 0.3, 3, 1.0,
                               1.0, 1.0),
               ArgumentError);
  PlannerConstants loose;
  loose.enforce_epsilon_range = false;
  EXPECT_NO_THROW(plan_parameters(EstimatorKind::sphere, Regime::grad_lipschitz, 0.5, 3, 1.0, 1.0,
                                  std::nullopt, loose));
}

TEST(Planner, ArgumentErrors) {
  EXPECT_THROW(plan_parameters(EstimatorKind::sphere, Regime::hessian_lipschitz, 0.1, 3, 1.0, 1.0,
                               std::nullopt),
               ArgumentError);
  EXPECT_THROW(plan_parameters(EstimatorKind::sphere, Regime::grad_lipschitz, 0.1, 3, 1.0, 0.0,
                               std::nullopt),
               ArgumentError);
  EXPECT_THROW(plan_parameters(EstimatorKind::sphere, Regime::grad_lipschitz, -0.1, 3, 1.0, 1.0,
                               std::nullopt),
               ArgumentError);
  PlannerConstants bad;
  bad.c_mu = 0.0;
  EXPECT_THROW(plan_parameters(EstimatorKind::sphere, Regime::grad_lipschitz, 0.1, 3, 1.0, 1.0,
                               std::nullopt, bad),
               ArgumentError);
  EXPECT_THROW(plan_parameters(EstimatorKind::one_point, Regime::grad_lipschitz, 0.1, 3, 1.0, 1.0,
                               std::nullopt),
               ArgumentError);
  EXPECT_THROW(parse_regime("cubic"), ArgumentError);
}

TEST(Planner, StepBoundAndPositivity) {
  for (auto kind : {EstimatorKind::coordinate, EstimatorKind::sphere, EstimatorKind::gaussian}) {
    for (double M : {0.5, 1.0, 7.0}) {
      const auto plan =
          plan_parameters(kind, Regime::grad_lipschitz, 0.3, 5, 2.0, M, std::nullopt);
      EXPECT_LE(plan.eta, 1.0 / (4.0 * M));
      EXPECT_GT(plan.mu, 0.0);
      EXPECT_GE(plan.N, 1u);
      EXPECT_GE(plan.m, 1u);
      EXPECT_GE(plan.T, 1u);
    }
  }
  ParameterPlan p;
  p.M = 1.0;
  p.eta = 0.3;
  EXPECT_THROW(p.validate(), ArgumentError);
}

// Tighter accuracy never asks for fewer samples.
TEST(Planner, MonotoneInEpsilon) {
  for (auto kind : {EstimatorKind::coordinate, EstimatorKind::sphere, EstimatorKind::gaussian}) {
    for (auto regime : {Regime::grad_lipschitz, Regime::hessian_lipschitz}) {
      std::uint64_t prev_total = std::numeric_limits<std::uint64_t>::max();
      for (double eps : {0.02, 0.05, 0.1, 0.2, 0.25}) {
        const auto plan = plan_parameters(kind, regime, eps, 4, 1.0, 1.0, 1.0);
        const std::uint64_t total = (plan.T + 1) * plan.estimator().samples_per_estimate(4);
        EXPECT_LE(total, prev_total);
        prev_total = total;
      }
    }
  }
}

TEST(Planner, IterationConstant) {
  PlannerConstants c;
  EXPECT_DOUBLE_EQ(c.resolved_c_T(2.0), 1.0);
  c.initial_gap = 3.0;
  EXPECT_DOUBLE_EQ(c.resolved_c_T(2.0), 96.0);
  c.c_T = 5.0;
  EXPECT_DOUBLE_EQ(c.resolved_c_T(2.0), 5.0);
}

TEST(Planner, TolerantCeiling) {
  EXPECT_EQ(tolerant_ceil(90000.00000000001), 90000u);
  EXPECT_EQ(tolerant_ceil(2.5), 3u);
  EXPECT_EQ(tolerant_ceil(0.0), 0u);
  EXPECT_THROW(tolerant_ceil(-1.0), ArgumentError);
}

TEST(LocationScale, WorkedValues) {
  EXPECT_DOUBLE_EQ(smoothness_from_location_scale(Matrix::Zero(3, 3), 2.0).M, 2.0);
  EXPECT_NEAR(smoothness_from_location_scale(Matrix::Identity(3, 3), 1.0).M, std::sqrt(2.0), 1e-12);
  const auto pair = smoothness_from_location_scale(2.0 * Matrix::Identity(2, 2), 1.0, 1.0);
  EXPECT_NEAR(pair.M, std::sqrt(20.0), 1e-9);
  ASSERT_TRUE(pair.H);
  EXPECT_NEAR(*pair.H, std::sqrt(80.0), 1e-9);
}

// Brute-force max of ||A v|| over a fine grid of unit vectors in the plane.
double grid_operator_norm(const Matrix& A) {
  double best = 0.0;
  constexpr int steps = 200000;
  for (int i = 0; i < steps; ++i) {
    const double t = M_PI * i / steps;
    const Vector v = (Vector(2) << std::cos(t), std::sin(t)).finished();
    best = std::max(best, (A * v).norm());
  }
  return best;
}

TEST(OperatorNorm, AgreesWithGridSearch) {
  Matrix A(2, 2);
  A << 2, 0, 0, 2;
  EXPECT_NEAR(operator_norm(A), grid_operator_norm(A), 1e-8);
  A << 1, 3, -2, 0.5;
  EXPECT_NEAR(operator_norm(A), grid_operator_norm(A), 1e-8);
  A << 0, 1, 0, 0;
  EXPECT_NEAR(operator_norm(A), 1.0, 1e-9);
}

TEST(OperatorNorm, RectangularMatchesSvd) {
  Matrix A(3, 5);
  A << 1, 2, 0, -1, 3, 0, 1, 1, 4, -2, 2, 0, -3, 1, 1;
  const double svd = Eigen::JacobiSVD<Matrix>(A).singularValues()[0];
  EXPECT_NEAR(operator_norm(A), svd, 1e-8 * svd);
}

}  // namespace
