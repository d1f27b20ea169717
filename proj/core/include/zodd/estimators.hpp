#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "zodd/directions.hpp"
#include "zodd/oracle.hpp"
#include "zodd/rng.hpp"
#include "zodd/types.hpp"

namespace zodd {

enum class EstimatorKind { coordinate, sphere, gaussian, one_point };

std::string_view to_string(EstimatorKind kind) noexcept;
/// Parses "coordinate", "sphere", "gaussian" or "one_point".
EstimatorKind parse_estimator_kind(std::string_view text);

/// Estimator kind plus its knobs: smoothing radius mu, direction count N
/// (ignored by the coordinate estimator, which always uses the d basis
/// vectors) and mini-batch size m per probe point.
struct EstimatorConfig {
  EstimatorKind kind = EstimatorKind::sphere;
  double mu = 0.1;
  std::size_t N = 1;
  std::size_t m = 1;
  bool record_probes = false;

  void validate() const;
  /// Oracle draws consumed by one estimate in dimension d:
  /// 2dm (coordinate), 2Nm (sphere, gaussian), Nm (one_point).
  std::uint64_t samples_per_estimate(std::size_t dimension) const;
};

/// Raw evaluations behind one direction; backward is empty for one-point.
struct ProbeRecord {
  Direction direction;
  std::vector<double> forward;
  std::vector<double> backward;
};

struct GradientEstimate {
  Vector g;
  std::uint64_t samples_used = 0;
  std::vector<ProbeRecord> probes;  // filled only when record_probes is set
};

/// Coordinate-wise central differences, averaged over m fresh draws per probe.
GradientEstimate grad_coordinate(const Point& x, const EstimatorConfig& cfg,
                                 SampleOracle& oracle, const RngStream& rng);

/// (d/N) sum_i [f(x+mu s_i) - f(x-mu s_i)]/(2mu) s_i with s_i uniform on the sphere.
GradientEstimate grad_sphere(const Point& x, const EstimatorConfig& cfg, SampleOracle& oracle,
                             const RngStream& rng);

/// (1/N) sum_i [f(x+mu u_i) - f(x-mu u_i)]/(2mu) u_i with u_i ~ N(0, I).
GradientEstimate grad_gaussian(const Point& x, const EstimatorConfig& cfg,
                               SampleOracle& oracle, const RngStream& rng);

/// (d/N) sum_i [(1/m) sum_j f(x+mu s_i)]/(2mu) s_i with sphere directions.
GradientEstimate grad_one_point(const Point& x, const EstimatorConfig& cfg,
                                SampleOracle& oracle, const RngStream& rng);

/// Dispatches on cfg.kind.
GradientEstimate estimate_gradient(const Point& x, const EstimatorConfig& cfg,
                                   SampleOracle& oracle, const RngStream& rng);

/// Two-point estimator over caller-supplied directions:
/// scale * sum_i (1/m) sum_j [f(x+mu v_i) - f(x-mu v_i)]/(2mu) v_i.
/// The randomised estimators call this with scale d/N (sphere) or 1/N (gaussian).
GradientEstimate two_point_with_directions(const Point& x, const EstimatorConfig& cfg,
                                           SampleOracle& oracle, const RngStream& rng,
                                           std::span<const Direction> directions, double scale);

/// One-point estimator over caller-supplied directions, scaled by d/N.
GradientEstimate one_point_with_directions(const Point& x, const EstimatorConfig& cfg,
                                           SampleOracle& oracle, const RngStream& rng,
                                           std::span<const Direction> directions);

/// Upper bounds on E||g - grad F(x)||^2 for the two-point estimators.
///
/// Without H the gradient-Lipschitz forms are returned; with H the
/// Hessian-Lipschitz forms. `grad_norm_sq` is ||grad F(x)||^2. Not defined for
/// one_point (ArgumentError).
double mse_bound(EstimatorKind kind, double mu, std::size_t N, std::size_t m,
                 std::size_t dimension, double sigma, double M, std::optional<double> H,
                 double grad_norm_sq);

}  // namespace zodd
