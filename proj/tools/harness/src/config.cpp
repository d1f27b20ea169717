#include "zodd/harness/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <yaml-cpp/yaml.h>

#include "zodd/errors.hpp"
#include "zodd/pricing_env.hpp"
#include "zodd/quadratic_env.hpp"
#include "zodd/strategic_env.hpp"
#include "zodd/synthetic.hpp"
#include "zodd/tabular_io.hpp"

namespace zodd::harness {
namespace {

// Walks a YAML tree while remembering the dotted field path, so that every
// diagnostic can name both the line and the field.
class Reader {
 public:
  Reader(YAML::Node node, std::string path, const std::string& source, YAML::Mark fallback)
      : node_(std::move(node)), path_(std::move(path)), source_(source), fallback_(fallback) {}

  [[noreturn]] void fail(const std::string& message) const {
    YAML::Mark mark = node_.IsDefined() ? node_.Mark() : fallback_;
    std::ostringstream out;
    out << source_;
    if (!mark.is_null()) out << ':' << mark.line + 1 << ':' << mark.column + 1;
    out << ": " << (path_.empty() ? "<root>" : path_) << ": " << message;
    throw ConfigError(out.str());
  }

  bool defined() const { return node_.IsDefined() && !node_.IsNull(); }
  bool is_sequence() const { return node_.IsSequence(); }
  bool is_scalar() const { return node_.IsScalar(); }
  std::size_t size() const { return node_.size(); }

  Reader operator[](const std::string& key) const {
    if (!node_.IsMap()) fail("expected a mapping");
    const YAML::Node child = node_[key];
    return Reader(child, path_.empty() ? key : path_ + "." + key, source_, mark());
  }

  Reader at(std::size_t i) const {
    return Reader(node_[i], path_ + "[" + std::to_string(i) + "]", source_, mark());
  }

  void require_map() const {
    if (!node_.IsMap()) fail("expected a mapping");
  }

  void allow_keys(std::initializer_list<const char*> keys) const {
    require_map();
    std::set<std::string> allowed(keys.begin(), keys.end());
    for (const auto& kv : node_) {
      const auto key = kv.first.as<std::string>();
      if (!allowed.count(key)) {
        Reader(kv.first, path_.empty() ? key : path_ + "." + key, source_, mark())
            .fail("unknown field");
      }
    }
  }

  std::string text() const {
    if (!node_.IsScalar()) fail("expected a scalar value");
    return node_.Scalar();
  }

  double number() const {
    try {
      const double v = node_.as<double>();
      if (!std::isfinite(v)) fail("expected a finite number");
      return v;
    } catch (const YAML::Exception&) {
      fail("expected a number, found '" + (node_.IsScalar() ? node_.Scalar() : "<non-scalar>") +
           "'");
    }
  }

  double positive() const {
    const double v = number();
    if (!(v > 0.0)) fail("must be positive");
    return v;
  }

  double non_negative() const {
    const double v = number();
    if (!(v >= 0.0)) fail("must be non-negative");
    return v;
  }

  std::uint64_t count(std::uint64_t min = 0) const {
    const std::string s = text();
    if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos) {
      fail("expected a non-negative integer, found '" + s + "'");
    }
    std::uint64_t v = 0;
    try {
      v = std::stoull(s);
    } catch (const std::exception&) {
      fail("integer out of range");
    }
    if (v < min) fail("must be at least " + std::to_string(min));
    return v;
  }

  bool flag() const {
    try {
      return node_.as<bool>();
    } catch (const YAML::Exception&) {
      fail("expected true or false");
    }
  }

  std::vector<double> numbers() const {
    if (!node_.IsSequence() || node_.size() == 0) fail("expected a non-empty list of numbers");
    std::vector<double> out;
    for (std::size_t i = 0; i < node_.size(); ++i) out.push_back(at(i).number());
    return out;
  }

  std::vector<std::uint64_t> counts(std::uint64_t min = 0) const {
    if (!node_.IsSequence() || node_.size() == 0) fail("expected a non-empty list of integers");
    std::vector<std::uint64_t> out;
    for (std::size_t i = 0; i < node_.size(); ++i) out.push_back(at(i).count(min));
    return out;
  }

  YAML::Mark mark() const { return node_.IsDefined() ? node_.Mark() : fallback_; }

 private:
  YAML::Node node_;
  std::string path_;
  const std::string& source_;
  YAML::Mark fallback_;
};

EstimatorKind parse_kind(const Reader& r) {
  try {
    return parse_estimator_kind(r.text());
  } catch (const ArgumentError&) {
    r.fail("unknown estimator kind '" + r.text() +
           "' (expected coordinate, sphere, gaussian or one_point)");
  }
}

EnvironmentSpec parse_environment(const Reader& r) {
  if (!r.defined()) r.fail("missing required section");
  r.allow_keys({"kind", "seed", "dimension", "sigma", "lambda_min", "lambda_max",
                "random_linear_term", "products", "buyers", "prices_file", "population",
                "features", "separation", "train_fraction", "reward", "population_file"});
  EnvironmentSpec env;
  const Reader kind = r["kind"];
  if (!kind.defined()) kind.fail("missing required field");
  const std::string k = kind.text();
  if (k == "quadratic") {
    env.kind = EnvKind::quadratic;
  } else if (k == "pricing") {
    env.kind = EnvKind::pricing;
  } else if (k == "strategic") {
    env.kind = EnvKind::strategic;
  } else {
    kind.fail("unknown environment '" + k + "' (expected quadratic, pricing or strategic)");
  }
  if (r["seed"].defined()) env.seed = r["seed"].count();
  if (r["dimension"].defined()) env.dimension = r["dimension"].count(1);
  if (r["sigma"].defined()) env.sigma = r["sigma"].non_negative();
  if (r["lambda_min"].defined()) env.lambda_min = r["lambda_min"].non_negative();
  if (r["lambda_max"].defined()) env.lambda_max = r["lambda_max"].non_negative();
  if (env.lambda_max < env.lambda_min) r["lambda_max"].fail("must be >= lambda_min");
  if (r["random_linear_term"].defined()) env.random_linear_term = r["random_linear_term"].flag();
  if (r["products"].defined()) env.products = r["products"].count(1);
  if (r["buyers"].defined()) env.buyers = r["buyers"].count(1);
  if (r["prices_file"].defined()) env.prices_file = r["prices_file"].text();
  if (r["population"].defined()) env.population = r["population"].count(2);
  if (r["features"].defined()) env.features = r["features"].count(1);
  if (r["separation"].defined()) env.separation = r["separation"].number();
  if (r["train_fraction"].defined()) {
    env.train_fraction = r["train_fraction"].number();
    if (!(env.train_fraction > 0.0 && env.train_fraction <= 1.0)) {
      r["train_fraction"].fail("must lie in (0, 1]");
    }
  }
  if (r["reward"].defined()) env.reward = r["reward"].non_negative();
  if (r["population_file"].defined()) env.population_file = r["population_file"].text();
  return env;
}

PlanSpec parse_plan(const Reader& r) {
  r.allow_keys({"regime", "epsilon", "c_mu", "c_m", "c_T", "enforce_epsilon_range"});
  PlanSpec plan;
  if (r["regime"].defined()) {
    try {
      plan.regime = parse_regime(r["regime"].text());
    } catch (const ArgumentError&) {
      r["regime"].fail("expected grad or hessian");
    }
  }
  if (!r["epsilon"].defined()) r["epsilon"].fail("missing required field");
  plan.epsilon = r["epsilon"].positive();
  if (r["c_mu"].defined()) plan.constants.c_mu = r["c_mu"].positive();
  if (r["c_m"].defined()) plan.constants.c_m = r["c_m"].positive();
  if (r["c_T"].defined()) plan.constants.c_T = r["c_T"].positive();
  if (r["enforce_epsilon_range"].defined()) {
    plan.constants.enforce_epsilon_range = r["enforce_epsilon_range"].flag();
  }
  return plan;
}

MethodSpec parse_method(const Reader& r) {
  r.allow_keys({"name", "kind", "mu", "N", "m", "step", "plan"});
  MethodSpec method;
  const Reader kind = r["kind"];
  if (!kind.defined()) kind.fail("missing required field");
  method.estimator.kind = parse_kind(kind);
  method.name = r["name"].defined() ? r["name"].text() : std::string(to_string(method.estimator.kind));
  if (method.name.empty() || method.name.find_first_of(",\n\"") != std::string::npos) {
    r["name"].fail("name must be non-empty and free of commas, quotes and newlines");
  }
  if (r["mu"].defined()) method.estimator.mu = r["mu"].positive();
  if (r["N"].defined()) method.estimator.N = r["N"].count(1);
  if (r["m"].defined()) method.estimator.m = r["m"].count(1);
  if (r["step"].defined()) method.step = r["step"].positive();
  if (r["plan"].defined()) {
    if (method.estimator.kind == EstimatorKind::one_point) {
      r["plan"].fail("no schedule is defined for the one-point estimator");
    }
    method.plan = parse_plan(r["plan"]);
  }
  return method;
}

TuningSpec parse_tuning(const Reader& r) {
  r.allow_keys({"enabled", "step", "mu", "batch", "seeds"});
  TuningSpec t;
  if (r["enabled"].defined()) t.enabled = r["enabled"].flag();
  if (r["step"].defined()) {
    t.step = r["step"].numbers();
    for (std::size_t i = 0; i < t.step.size(); ++i) r["step"].at(i).positive();
  }
  if (r["mu"].defined()) {
    t.mu = r["mu"].numbers();
    for (std::size_t i = 0; i < t.mu.size(); ++i) r["mu"].at(i).positive();
  }
  if (r["batch"].defined()) {
    const auto b = r["batch"].counts(1);
    t.batch.assign(b.begin(), b.end());
  }
  if (r["seeds"].defined()) t.seeds = r["seeds"].counts();
  return t;
}

std::vector<std::uint64_t> parse_seeds(const Reader& r) {
  if (r.is_sequence()) return r.counts();
  r.allow_keys({"start", "count"});
  const std::uint64_t start = r["start"].defined() ? r["start"].count() : 1;
  if (!r["count"].defined()) r["count"].fail("missing required field");
  const std::uint64_t n = r["count"].count(1);
  std::vector<std::uint64_t> out(n);
  for (std::uint64_t i = 0; i < n; ++i) out[i] = start + i;
  return out;
}

}  // namespace

ExperimentConfig parse_config(const std::string& text, const std::string& source) {
  YAML::Node root;
  try {
    root = YAML::Load(text);
  } catch (const YAML::ParserException& e) {
    std::ostringstream out;
    out << source << ':' << e.mark.line + 1 << ':' << e.mark.column + 1 << ": syntax error: "
        << e.msg;
    throw ConfigError(out.str());
  }
  const Reader r(root, "", source, YAML::Mark::null_mark());
  if (!root.IsMap()) r.fail("top level must be a mapping");
  r.allow_keys({"environment", "estimators", "budget", "seeds", "evaluation_draws", "x0",
                "trace_points", "tuning"});

  ExperimentConfig cfg;
  cfg.environment = parse_environment(r["environment"]);

  const Reader methods = r["estimators"];
  if (!methods.defined() || !methods.is_sequence() || methods.size() == 0) {
    methods.fail("expected a non-empty list of estimators");
  }
  std::set<std::string> names;
  for (std::size_t i = 0; i < methods.size(); ++i) {
    MethodSpec m = parse_method(methods.at(i));
    if (!names.insert(m.name).second) methods.at(i).fail("duplicate estimator name '" + m.name + "'");
    cfg.methods.push_back(std::move(m));
  }

  if (r["budget"].defined()) cfg.budget = r["budget"].count(1);
  const Reader seeds = r["seeds"];
  if (!seeds.defined()) seeds.fail("missing required field");
  cfg.seeds = parse_seeds(seeds);
  if (r["evaluation_draws"].defined()) cfg.evaluation_draws = r["evaluation_draws"].count(2);
  if (r["trace_points"].defined()) cfg.trace_points = r["trace_points"].count(1);
  const Reader x0 = r["x0"];
  if (x0.defined()) {
    if (x0.is_scalar()) {
      cfg.x0_fill = x0.number();
    } else {
      cfg.x0 = x0.numbers();
    }
  }
  if (r["tuning"].defined()) cfg.tuning = parse_tuning(r["tuning"]);
  return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path.string() + ": cannot open config file");
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config(text.str(), path.string());
}

BuiltEnvironment build_environment(const ExperimentConfig& config,
                                   const std::filesystem::path& base_dir) {
  const EnvironmentSpec& spec = config.environment;
  auto resolve = [&](const std::filesystem::path& p) {
    return p.is_relative() && !base_dir.empty() ? base_dir / p : p;
  };
  BuiltEnvironment out;
  double fill = 1.0;
  try {
    switch (spec.kind) {
      case EnvKind::quadratic: {
        QuadraticSpec q;
        q.dimension = spec.dimension;
        q.sigma = spec.sigma;
        q.lambda_min = spec.lambda_min;
        q.lambda_max = spec.lambda_max;
        q.random_linear_term = spec.random_linear_term;
        q.seed = spec.seed;
        out.env = std::make_unique<QuadraticEnv>(make_quadratic_env(q));
        break;
      }
      case EnvKind::pricing: {
        const PriceVectors prices = spec.prices_file.empty()
                                        ? make_synthetic_prices(spec.seed, spec.products)
                                        : read_prices_csv(resolve(spec.prices_file));
        out.env = std::make_unique<PricingEnv>(prices.theta, prices.rho, spec.buyers);
        fill = 0.5;
        break;
      }
      case EnvKind::strategic: {
        Population pop = spec.population_file.empty()
                             ? make_synthetic_population(spec.seed, spec.population,
                                                         spec.features, spec.separation)
                             : read_population_csv(resolve(spec.population_file));
        auto split = split_population(pop, spec.train_fraction);
        if (split.first.empty()) throw ArgumentError("training split is empty");
        out.env = std::make_unique<StrategicEnv>(std::move(split.first), spec.reward);
        break;
      }
    }
  } catch (const Error& e) {
    throw ConfigError(std::string("environment: ") + e.what());
  }

  const std::size_t d = out.env->dimension();
  if (!config.x0.empty()) {
    if (config.x0.size() != d) {
      throw ConfigError("x0: expected " + std::to_string(d) + " coordinates, found " +
                        std::to_string(config.x0.size()));
    }
    out.x0 = Eigen::Map<const Vector>(config.x0.data(), static_cast<Eigen::Index>(d));
  } else {
    out.x0 = Vector::Constant(static_cast<Eigen::Index>(d), config.x0_fill.value_or(fill));
  }
  return out;
}

}  // namespace zodd::harness
