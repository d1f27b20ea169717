#include "zodd/estimators.hpp"

#include <cmath>

#include "zodd/errors.hpp"

namespace zodd {
namespace {

// Sub-stream tags of one estimator call: directions and probe evaluations
// never share randomness.
constexpr std::uint64_t kDirectionTag = 0xD1;
constexpr std::uint64_t kProbeTag = 0xE2;

template <class Body>
GradientEstimate discard_on_budget_error(SampleOracle& oracle, Body&& body) {
  const std::uint64_t start = oracle.budget().consumed();
  try {
    return body();
  } catch (const BudgetError& e) {
    throw BudgetError(e.consumed(), e.limit(), e.consumed() - start);
  }
}

void require_kind(const EstimatorConfig& cfg, EstimatorKind expected) {
  cfg.validate();
  if (cfg.kind != expected) {
    throw ArgumentError("estimator called with kind '" + std::string(to_string(cfg.kind)) +
                        "', expected '" + std::string(to_string(expected)) + "'");
  }
}

std::vector<Direction> random_directions(EstimatorKind kind, const RngStream& rng,
                                         std::size_t count, std::size_t dimension) {
  std::vector<Direction> dirs;
  dirs.reserve(count);
  const RngStream base = rng.child(kDirectionTag);
  for (std::size_t i = 0; i < count; ++i) {
    dirs.push_back(kind == EstimatorKind::gaussian ? draw_gaussian(base.child(i), dimension)
                                                   : draw_sphere(base.child(i), dimension));
  }
  return dirs;
}

}  // namespace

std::string_view to_string(EstimatorKind kind) noexcept {
  switch (kind) {
    case EstimatorKind::coordinate: return "coordinate";
    case EstimatorKind::sphere: return "sphere";
    case EstimatorKind::gaussian: return "gaussian";
    case EstimatorKind::one_point: return "one_point";
  }
  return "unknown";
}

EstimatorKind parse_estimator_kind(std::string_view text) {
  if (text == "coordinate") return EstimatorKind::coordinate;
  if (text == "sphere") return EstimatorKind::sphere;
  if (text == "gaussian") return EstimatorKind::gaussian;
  if (text == "one_point") return EstimatorKind::one_point;
  throw ArgumentError("unknown estimator kind '" + std::string(text) + "'");
}

void EstimatorConfig::validate() const {
  if (!(mu > 0.0) || !std::isfinite(mu)) throw ArgumentError("mu must be positive and finite");
  if (N == 0) throw ArgumentError("N must be at least 1");
  if (m == 0) throw ArgumentError("m must be at least 1");
}

std::uint64_t EstimatorConfig::samples_per_estimate(std::size_t dimension) const {
  switch (kind) {
    case EstimatorKind::coordinate: return 2ull * dimension * m;
    case EstimatorKind::sphere:
    case EstimatorKind::gaussian: return 2ull * N * m;
    case EstimatorKind::one_point: return static_cast<std::uint64_t>(N) * m;
  }
  return 0;
}

GradientEstimate two_point_with_directions(const Point& x, const EstimatorConfig& cfg,
                                           SampleOracle& oracle, const RngStream& rng,
                                           std::span<const Direction> directions,
                                           double scale) {
  cfg.validate();
  const std::size_t d = oracle.dimension();
  require_point(x, d);
  return discard_on_budget_error(oracle, [&] {
    GradientEstimate out;
    out.g = Vector::Zero(static_cast<Eigen::Index>(d));
    const double weight = scale / (2.0 * cfg.mu * static_cast<double>(cfg.m));
    const RngStream probes = rng.child(kProbeTag);
    Point probe(x.size());
    for (std::size_t i = 0; i < directions.size(); ++i) {
      const Vector& v = directions[i].coords;
      if (static_cast<std::size_t>(v.size()) != d) throw ArgumentError("direction length mismatch");
      const RngStream dir_stream = probes.child(i);
      ProbeRecord record;
      if (cfg.record_probes) {
        record.direction = directions[i];
        record.forward.reserve(cfg.m);
        record.backward.reserve(cfg.m);
      }
      double diff_sum = 0.0;
      for (std::size_t j = 0; j < cfg.m; ++j) {
        probe = x + cfg.mu * v;
        const double forward = oracle.sample(probe, dir_stream.child(2 * j));
        probe = x - cfg.mu * v;
        const double backward = oracle.sample(probe, dir_stream.child(2 * j + 1));
        diff_sum += forward - backward;
        if (cfg.record_probes) {
          record.forward.push_back(forward);
          record.backward.push_back(backward);
        }
      }
      out.g += (weight * diff_sum) * v;
      out.samples_used += 2 * cfg.m;
      if (cfg.record_probes) out.probes.push_back(std::move(record));
    }
    return out;
  });
}

GradientEstimate one_point_with_directions(const Point& x, const EstimatorConfig& cfg,
                                           SampleOracle& oracle, const RngStream& rng,
                                           std::span<const Direction> directions) {
  cfg.validate();
  const std::size_t d = oracle.dimension();
  require_point(x, d);
  if (directions.empty()) throw ArgumentError("one-point estimator needs at least one direction");
  return discard_on_budget_error(oracle, [&] {
    GradientEstimate out;
    out.g = Vector::Zero(static_cast<Eigen::Index>(d));
    const double weight = static_cast<double>(d) / static_cast<double>(directions.size()) /
                          (2.0 * cfg.mu * static_cast<double>(cfg.m));
    const RngStream probes = rng.child(kProbeTag);
    Point probe(x.size());
    for (std::size_t i = 0; i < directions.size(); ++i) {
      const Vector& v = directions[i].coords;
      if (static_cast<std::size_t>(v.size()) != d) throw ArgumentError("direction length mismatch");
      const RngStream dir_stream = probes.child(i);
      ProbeRecord record;
      if (cfg.record_probes) record.direction = directions[i];
      probe = x + cfg.mu * v;
      double sum = 0.0;
      for (std::size_t j = 0; j < cfg.m; ++j) {
        const double value = oracle.sample(probe, dir_stream.child(j));
        sum += value;
        if (cfg.record_probes) record.forward.push_back(value);
      }
      out.g += (weight * sum) * v;
      out.samples_used += cfg.m;
      if (cfg.record_probes) out.probes.push_back(std::move(record));
    }
    return out;
  });
}

GradientEstimate grad_coordinate(const Point& x, const EstimatorConfig& cfg,
                                 SampleOracle& oracle, const RngStream& rng) {
  require_kind(cfg, EstimatorKind::coordinate);
  const std::size_t d = oracle.dimension();
  std::vector<Direction> basis;
  basis.reserve(d);
  for (std::size_t i = 0; i < d; ++i) basis.push_back(draw_coordinate(i, d));
  return two_point_with_directions(x, cfg, oracle, rng, basis, 1.0);
}

GradientEstimate grad_sphere(const Point& x, const EstimatorConfig& cfg, SampleOracle& oracle,
                             const RngStream& rng) {
  require_kind(cfg, EstimatorKind::sphere);
  const std::size_t d = oracle.dimension();
  const auto dirs = random_directions(EstimatorKind::sphere, rng, cfg.N, d);
  return two_point_with_directions(x, cfg, oracle, rng, dirs,
                                   static_cast<double>(d) / static_cast<double>(cfg.N));
}

GradientEstimate grad_gaussian(const Point& x, const EstimatorConfig& cfg,
                               SampleOracle& oracle, const RngStream& rng) {
  require_kind(cfg, EstimatorKind::gaussian);
  const std::size_t d = oracle.dimension();
  const auto dirs = random_directions(EstimatorKind::gaussian, rng, cfg.N, d);
  return two_point_with_directions(x, cfg, oracle, rng, dirs,
                                   1.0 / static_cast<double>(cfg.N));
}

GradientEstimate grad_one_point(const Point& x, const EstimatorConfig& cfg,
                                SampleOracle& oracle, const RngStream& rng) {
  require_kind(cfg, EstimatorKind::one_point);
  const auto dirs = random_directions(EstimatorKind::sphere, rng, cfg.N, oracle.dimension());
  return one_point_with_directions(x, cfg, oracle, rng, dirs);
}

GradientEstimate estimate_gradient(const Point& x, const EstimatorConfig& cfg,
                                   SampleOracle& oracle, const RngStream& rng) {
  switch (cfg.kind) {
    case EstimatorKind::coordinate: return grad_coordinate(x, cfg, oracle, rng);
    case EstimatorKind::sphere: return grad_sphere(x, cfg, oracle, rng);
    case EstimatorKind::gaussian: return grad_gaussian(x, cfg, oracle, rng);
    case EstimatorKind::one_point: return grad_one_point(x, cfg, oracle, rng);
  }
  throw ArgumentError("unknown estimator kind");
}

double mse_bound(EstimatorKind kind, double mu, std::size_t N_dirs, std::size_t m_batch,
                 std::size_t dimension, double sigma, double M, std::optional<double> H,
                 double grad_norm_sq) {
  if (!(mu > 0.0) || N_dirs == 0 || m_batch == 0 || dimension == 0) {
    throw ArgumentError("mse_bound: mu, N, m and d must be positive");
  }
  const double d = static_cast<double>(dimension);
  const double N = static_cast<double>(N_dirs);
  const double m = static_cast<double>(m_batch);
  const double s2 = sigma * sigma;
  const double mu2 = mu * mu;
  const double mu4 = mu2 * mu2;
  switch (kind) {
    case EstimatorKind::coordinate:
      if (H) return 3.0 * s2 * d / (2.0 * mu2 * m) + (*H) * (*H) * mu4 * d / 12.0;
      return 3.0 * s2 * d / (2.0 * mu2 * m) + 3.0 * M * M * d * mu2 / 4.0;
    case EstimatorKind::sphere: {
      const double noise = 3.0 * s2 * d * d / (mu2 * N * m);
      const double directions = 18.0 * d * d / (N * (d + 2.0)) * grad_norm_sq;
      if (H) {
        const double h2 = (*H) * (*H);
        return noise + 3.0 * mu4 * h2 + h2 * mu4 * d * d / (6.0 * N) + directions;
      }
      return noise + 3.0 * M * M * mu2 + 3.0 * M * M * mu2 * d * d / (2.0 * N) + directions;
    }
    case EstimatorKind::gaussian: {
      const double noise = 3.0 * s2 * d / (mu2 * N * m);
      const double directions = 18.0 * d / N * grad_norm_sq;
      if (H) {
        const double h2 = (*H) * (*H);
        return noise + 3.0 * mu4 * h2 * d * d +
               h2 * mu4 * d * (d + 2.0) * (d + 4.0) * (d + 6.0) / (6.0 * N) + directions;
      }
      return noise + 3.0 * mu2 * M * M * d +
             3.0 * d * M * M * mu2 * (d + 2.0) * (d + 4.0) / (2.0 * N) + directions;
    }
    case EstimatorKind::one_point:
      break;
  }
  throw ArgumentError("no error bound is defined for the one-point estimator");
}

}  // namespace zodd
