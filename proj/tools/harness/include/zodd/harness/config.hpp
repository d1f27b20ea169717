#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "zodd/environment.hpp"
#include "zodd/estimators.hpp"
#include "zodd/planner.hpp"

namespace zodd::harness {

/// Invalid configuration. The message carries "<source>:<line>:<col>: <field>: ...".
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class EnvKind { quadratic, pricing, strategic };

struct EnvironmentSpec {
  EnvKind kind = EnvKind::quadratic;
  std::uint64_t seed = 0;

  // quadratic
  std::size_t dimension = 10;
  double sigma = 1.0;
  double lambda_min = 0.1;
  double lambda_max = 1.0;
  bool random_linear_term = false;

  // pricing
  std::size_t products = 10;
  std::size_t buyers = 120;
  std::filesystem::path prices_file;

  // strategic
  std::size_t population = 2000;
  std::size_t features = 11;
  double separation = 2.0;
  double train_fraction = 0.8;
  double reward = 2.0;
  std::filesystem::path population_file;
};

struct PlanSpec {
  Regime regime = Regime::grad_lipschitz;
  double epsilon = 0.25;
  PlannerConstants constants;
};

/// One optimiser to run: an estimator plus a step size, or a planner request.
struct MethodSpec {
  std::string name;
  EstimatorConfig estimator;
  std::optional<double> step;
  std::optional<PlanSpec> plan;
};

/// Grid search over step size, mu and the batch knob (N for the two-point
/// random-direction kinds, m otherwise). Picks the lowest mean objective over
/// the tuning seeds.
struct TuningSpec {
  bool enabled = false;
  std::vector<double> step{1e-4, 1e-3, 1e-2};
  std::vector<double> mu{0.02, 0.1, 0.5};
  std::vector<std::size_t> batch{1, 10, 100};
  std::vector<std::uint64_t> seeds{1001, 1002, 1003};
};

struct ExperimentConfig {
  EnvironmentSpec environment;
  std::vector<MethodSpec> methods;
  std::uint64_t budget = 5000;
  std::vector<std::uint64_t> seeds;
  std::size_t evaluation_draws = 1000;
  /// Starting point: explicit coordinates, or a constant fill.
  std::vector<double> x0;
  std::optional<double> x0_fill;
  std::size_t trace_points = 200;
  TuningSpec tuning;
};

/// Parses the YAML grammar documented in README.md.
ExperimentConfig parse_config(const std::string& text, const std::string& source = "<config>");
ExperimentConfig load_config(const std::filesystem::path& path);

/// Environment and starting point described by a config.
struct BuiltEnvironment {
  std::unique_ptr<Environment> env;
  Point x0;
};

/// Relative file paths are resolved against `base_dir`.
BuiltEnvironment build_environment(const ExperimentConfig& config,
                                   const std::filesystem::path& base_dir = {});

}  // namespace zodd::harness
