#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "stat_helpers.hpp"
#include "zodd/errors.hpp"
#include "zodd/quadratic_env.hpp"
#include "zodd/smoothing_math.hpp"

namespace {

using namespace zodd;
using zodd::testing::max_z;

Vector flatten(const Matrix& m) { return Eigen::Map<const Vector>(m.data(), m.size()); }

double matrix_z(const McMatrix& mc, const Matrix& target) {
  return max_z(flatten(mc.mean), flatten(mc.standard_error), flatten(target));
}

TEST(SmoothingBias, WorkedValues) {
  EXPECT_DOUBLE_EQ(smoothing_bias_bound(SmoothingKernel::ball, 0.1, 17, 2.0), 0.2);
  EXPECT_DOUBLE_EQ(smoothing_bias_bound(SmoothingKernel::gaussian, 0.1, 4, 2.0), 0.4);
  EXPECT_NEAR(smoothing_bias_bound(SmoothingKernel::gaussian, 0.1, 4, 0.0, 3.0), 0.12, 1e-15);
}

TEST(SmoothingBias, MonotoneInEveryArgument) {
  for (auto kernel : {SmoothingKernel::ball, SmoothingKernel::gaussian}) {
    double prev = 0.0;
    for (double mu : {0.01, 0.1, 0.5, 1.0, 3.0}) {
      const double b = smoothing_bias_bound(kernel, mu, 5, 1.0);
      EXPECT_GT(b, prev);
      prev = b;
    }
    prev = 0.0;
    for (double M : {0.1, 1.0, 10.0}) {
      const double b = smoothing_bias_bound(kernel, 0.1, 5, M);
      EXPECT_GT(b, prev);
      prev = b;
    }
    prev = 0.0;
    for (double H : {0.1, 1.0, 10.0}) {
      const double b = smoothing_bias_bound(kernel, 0.1, 5, 1.0, H);
      EXPECT_GT(b, prev);
      prev = b;
    }
  }
  double prev = 0.0;
  for (std::size_t d : {1u, 2u, 8u, 64u}) {
    const double b = smoothing_bias_bound(SmoothingKernel::gaussian, 0.1, d, 1.0);
    EXPECT_GT(b, prev);
    prev = b;
  }
}

TEST(SmoothingBias, RejectsBadInput) {
  EXPECT_THROW(smoothing_bias_bound(SmoothingKernel::ball, 0.0, 3, 1.0), ArgumentError);
  EXPECT_THROW(smoothing_bias_bound(SmoothingKernel::ball, 0.1, 0, 1.0), ArgumentError);
}

TEST(AnalyticMoment, WorkedValues) {
  EXPECT_TRUE(analytic_moment(MomentKind::sphere_kth_ssT, 6, 2)
                  .isApprox(Matrix::Identity(6, 6) / 6.0, 1e-15));
  EXPECT_TRUE(analytic_moment(MomentKind::gauss_kth_uuT, 3, 4)
                  .isApprox(35.0 * Matrix::Identity(3, 3), 1e-15));
  Matrix expected(2, 2);
  expected << 3, 0, 0, 1;
  EXPECT_TRUE(analytic_moment(MomentKind::gauss_quad_form, 2, 0, Vector::Unit(2, 0))
                  .isApprox(expected, 1e-15));
}

TEST(AnalyticMoment, Errors) {
  EXPECT_THROW(analytic_moment(MomentKind::gauss_kth_uuT, 3, 3), ArgumentError);
  EXPECT_THROW(analytic_moment(MomentKind::gauss_quad_form, 3, 0), ArgumentError);
  EXPECT_THROW(analytic_moment(MomentKind::sphere_quad_form, 3, 0, Vector::Ones(2)),
               ArgumentError);
}

// Entrywise agreement of every analytic moment with 10^5 Monte-Carlo draws.
TEST(SampleMoment, AgreesWithAnalytic) {
  const RngStream rng(2718, 0);
  std::uint64_t tag = 0;
  for (std::size_t d : {2u, 5u, 10u}) {
    Vector a = Vector::LinSpaced(static_cast<Eigen::Index>(d), 1.0, -0.5);
    struct Case {
      MomentKind kind;
      int k;
      bool needs_a;
    };
    for (const Case c : {Case{MomentKind::sphere_kth_ssT, 0, false},
                         Case{MomentKind::sphere_quad_form, 0, true},
                         Case{MomentKind::gauss_kth_uuT, 2, false},
                         Case{MomentKind::gauss_kth_uuT, 4, false},
                         Case{MomentKind::gauss_quad_form, 0, true}}) {
      const std::optional<Vector> arg = c.needs_a ? std::optional<Vector>(a) : std::nullopt;
      const McMatrix mc = sample_moment(c.kind, d, c.k, arg, 100000, rng.child(tag++));
      EXPECT_LT(matrix_z(mc, analytic_moment(c.kind, d, c.k, arg)), 5.0)
          << "d=" << d << " kind=" << static_cast<int>(c.kind) << " k=" << c.k;
    }
  }
}

TEST(SampleMoment, GaussianNormSquared) {
  const McScalar mc = sample_gaussian_norm_sq(7, 100000, RngStream(1, 1));
  EXPECT_LT(std::abs(mc.mean - 7.0) / mc.standard_error, 5.0);
}

TEST(SampleMoment, ThreadCountDoesNotChangeResult) {
  const RngStream rng(31, 4);
  const McMatrix one = sample_moment(MomentKind::gauss_kth_uuT, 4, 2, std::nullopt, 20000, rng, 1);
  const McMatrix four = sample_moment(MomentKind::gauss_kth_uuT, 4, 2, std::nullopt, 20000, rng, 4);
  EXPECT_EQ(one.mean, four.mean);
  EXPECT_EQ(one.standard_error, four.standard_error);
}

TEST(VarianceRatio, IidInputNearOne) {
  const RngStream rng(77, 0);
  Matrix values(10, 10000);
  RngEngine engine = rng.engine();
  std::normal_distribution<double> normal;
  for (Eigen::Index j = 0; j < values.cols(); ++j) {
    for (Eigen::Index i = 0; i < values.rows(); ++i) values(i, j) = normal(engine);
  }
  const double ratio = minibatch_variance_ratio(values);
  EXPECT_GE(ratio, 0.9);
  EXPECT_LE(ratio, 1.1);
}

TEST(VarianceRatio, SingleRowIsExactlyOne) {
  Matrix values(1, 5);
  values << 1, 4, 2, 8, 5;
  EXPECT_DOUBLE_EQ(minibatch_variance_ratio(values), 1.0);
}

TEST(VarianceRatio, ConstantInputIsUndefined) {
  EXPECT_THROW(minibatch_variance_ratio(Matrix::Constant(3, 4, 2.5)), NumericalError);
}

QuadraticEnv linear_env(const Vector& a) {
  return QuadraticEnv(Matrix::Zero(a.size(), a.size()), a, 0.0);
}

TEST(SmoothedGradient, LinearIsPreserved) {
  const Vector a = (Vector(3) << 1.0, -2.0, 0.5).finished();
  const QuadraticEnv env = linear_env(a);
  const Point x = Point::Constant(3, 0.3);
  for (auto kernel : {SmoothingKernel::ball, SmoothingKernel::gaussian}) {
    for (double mu : {0.01, 1.0}) {
      const SmoothedFunctionOracle oracle(env, mu, kernel, 100000);
      const McVector g = oracle.smoothed_gradient(x, RngStream(10, 0));
      EXPECT_LT(max_z(g.mean, g.standard_error, a), 5.0);
    }
  }
}

// For F = x^T A x / 2 the Gaussian smoothing adds (mu^2/2) tr(A), a constant,
// so the smoothed gradient is A x; the ball kernel preserves it by symmetry.
TEST(SmoothedGradient, QuadraticIsPreserved) {
  const QuadraticEnv env = make_quadratic_env({.dimension = 4, .sigma = 0.0, .seed = 3});
  const Point x = (Point(4) << 1.0, -1.0, 2.0, 0.5).finished();
  const Vector expected = env.A() * x;
  for (auto kernel : {SmoothingKernel::ball, SmoothingKernel::gaussian}) {
    const SmoothedFunctionOracle oracle(env, 0.3, kernel, 100000);
    const McVector g = oracle.smoothed_gradient(x, RngStream(11, 0));
    EXPECT_LT(max_z(g.mean, g.standard_error, expected), 5.0);
  }
}

TEST(SmoothedGradient, ConstantGivesZero) {
  const QuadraticEnv env = linear_env(Vector::Zero(3));
  const SmoothedFunctionOracle oracle(env, 0.5, SmoothingKernel::gaussian, 1000);
  const McVector g = oracle.smoothed_gradient(Point::Ones(3), RngStream(12, 0));
  EXPECT_TRUE(g.mean.isZero(0.0));
}

TEST(SmoothedGradient, NeedsExactObjective) {
  class SampleOnly final : public Environment {
   public:
    std::string name() const override { return "sample_only"; }
    std::size_t dimension() const override { return 2; }
    double draw(const Point&, RngEngine&) const override { return 0.0; }
  } env;
  const SmoothedFunctionOracle oracle(env, 0.1, SmoothingKernel::ball, 100);
  EXPECT_THROW(oracle.smoothed_gradient(Point::Zero(2), RngStream(1, 1)), UnsupportedEnvironment);
}

TEST(SmoothedOracle, RejectsBadParameters) {
  const QuadraticEnv env = linear_env(Vector::Ones(2));
  EXPECT_THROW(SmoothedFunctionOracle(env, 0.0, SmoothingKernel::ball), ArgumentError);
  EXPECT_THROW(SmoothedFunctionOracle(env, 0.1, SmoothingKernel::ball, 0), ArgumentError);
}

}  // namespace
