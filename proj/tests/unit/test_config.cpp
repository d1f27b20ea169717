#include <gtest/gtest.h>

#include <string>

#include "zodd/harness/config.hpp"

namespace {

using namespace zodd;
using namespace zodd::harness;

const char* kMinimal = R"(
environment:
  kind: quadratic
  dimension: 4
  sigma: 0.5
estimators:
  - {name: sph, kind: sphere, mu: 0.2, N: 3}
  - name: planned
    kind: gaussian
    plan: {regime: grad, epsilon: 0.3, c_mu: 2}
seeds: [4, 5]
)";

std::string error_of(const std::string& text) {
  try {
    (void)parse_config(text, "cfg.yaml");
  } catch (const ConfigError& e) {
    return e.what();
  }
  return {};
}

TEST(Config, ParsesMinimalWithDefaults) {
  const ExperimentConfig c = parse_config(kMinimal);
  EXPECT_EQ(c.environment.kind, EnvKind::quadratic);
  EXPECT_EQ(c.environment.dimension, 4u);
  EXPECT_DOUBLE_EQ(c.environment.sigma, 0.5);
  ASSERT_EQ(c.methods.size(), 2u);
  EXPECT_EQ(c.methods[0].estimator.kind, EstimatorKind::sphere);
  EXPECT_EQ(c.methods[0].estimator.N, 3u);
  EXPECT_DOUBLE_EQ(c.methods[0].estimator.mu, 0.2);
  ASSERT_TRUE(c.methods[1].plan);
  EXPECT_DOUBLE_EQ(c.methods[1].plan->epsilon, 0.3);
  EXPECT_DOUBLE_EQ(c.methods[1].plan->constants.c_mu, 2.0);
  EXPECT_EQ(c.budget, 5000u);
  EXPECT_EQ(c.evaluation_draws, 1000u);
  EXPECT_EQ(c.seeds, (std::vector<std::uint64_t>{4, 5}));
  EXPECT_FALSE(c.tuning.enabled);
}

TEST(Config, SeedRangeAndScalarStart) {
  const ExperimentConfig c = parse_config(R"(
environment: {kind: pricing, products: 3}
estimators: [{name: c, kind: coordinate, step: 0.01}]
seeds: {start: 10, count: 3}
x0: 0.75
budget: 600
)");
  EXPECT_EQ(c.seeds, (std::vector<std::uint64_t>{10, 11, 12}));
  ASSERT_TRUE(c.x0_fill);
  EXPECT_DOUBLE_EQ(*c.x0_fill, 0.75);
  const BuiltEnvironment built = build_environment(c);
  EXPECT_EQ(built.env->dimension(), 3u);
  EXPECT_EQ(built.x0, Point::Constant(3, 0.75));
}

TEST(Config, UnknownFieldNamesLineAndPath) {
  const std::string msg = error_of(R"(environment:
  kind: quadratic
  dimenson: 4
estimators: [{name: a, kind: sphere}]
seeds: [1]
)");
  EXPECT_NE(msg.find("cfg.yaml:3:"), std::string::npos) << msg;
  EXPECT_NE(msg.find("environment.dimenson"), std::string::npos) << msg;
}

TEST(Config, BadValueNamesField) {
  const std::string msg = error_of(R"(environment: {kind: quadratic}
estimators:
  - {name: a, kind: sphere, mu: -1}
seeds: [1]
)");
  EXPECT_NE(msg.find("cfg.yaml:3:"), std::string::npos) << msg;
  EXPECT_NE(msg.find("mu"), std::string::npos) << msg;
}

TEST(Config, Rejections) {
  EXPECT_NE(error_of("environment: {kind: quadratic}\nseeds: [1]\n").find("estimators"),
            std::string::npos);
  EXPECT_NE(error_of("environment: {kind: quadratic}\nestimators: [{name: a, kind: sphere}]\n")
                .find("seeds"),
            std::string::npos);
  EXPECT_NE(error_of("environment: {kind: moon}\nestimators: [{name: a, kind: sphere}]\nseeds: [1]\n")
                .find("environment.kind"),
            std::string::npos);
  EXPECT_NE(error_of("environment: {kind: quadratic}\nestimators: [{name: a, kind: newton}]\nseeds: [1]\n")
                .find("kind"),
            std::string::npos);
  EXPECT_NE(error_of("environment: {kind: quadratic}\nestimators: [{name: a, kind: sphere}, "
                     "{name: a, kind: gaussian}]\nseeds: [1]\n")
                .find("duplicate"),
            std::string::npos);
  EXPECT_NE(error_of("environment: {kind: quadratic}\nestimators: [{name: a, kind: one_point, "
                     "plan: {epsilon: 0.1}}]\nseeds: [1]\n")
                .find("one-point"),
            std::string::npos);
  EXPECT_NE(error_of("environment: [unclosed\n").find("cfg.yaml:"), std::string::npos);
}

TEST(Config, ExplicitStartMustMatchDimension) {
  const ExperimentConfig c = parse_config(R"(
environment: {kind: quadratic, dimension: 3}
estimators: [{name: a, kind: sphere}]
seeds: [1]
x0: [1, 2]
)");
  EXPECT_THROW(build_environment(c), ConfigError);
}

TEST(Config, StrategicUsesTrainingSplit) {
  const ExperimentConfig c = parse_config(R"(
environment: {kind: strategic, population: 100, train_fraction: 0.5}
estimators: [{name: a, kind: sphere, step: 0.01}]
seeds: [1]
)");
  const BuiltEnvironment built = build_environment(c);
  EXPECT_EQ(built.env->dimension(), 12u);
  EXPECT_EQ(built.x0, Point::Ones(12));
}

TEST(Config, Tuning) {
  const ExperimentConfig c = parse_config(R"(
environment: {kind: pricing}
estimators: [{name: a, kind: sphere}]
seeds: [1]
tuning: {enabled: true, step: [0.1], mu: [0.2, 0.3], batch: [2], seeds: [7]}
)");
  EXPECT_TRUE(c.tuning.enabled);
  EXPECT_EQ(c.tuning.mu, (std::vector<double>{0.2, 0.3}));
  EXPECT_EQ(c.tuning.batch, (std::vector<std::size_t>{2}));
  EXPECT_EQ(c.tuning.seeds, (std::vector<std::uint64_t>{7}));
}

}  // namespace
