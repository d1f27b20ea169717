#pragma once

#include <cstddef>
#include <optional>

#include "zodd/environment.hpp"
#include "zodd/rng.hpp"
#include "zodd/types.hpp"

namespace zodd {

enum class SmoothingKernel { ball, gaussian };

/// Monte-Carlo mean with per-coordinate standard errors (sample sd / sqrt(K)).
struct McVector {
  Vector mean;
  Vector standard_error;
  std::size_t draws = 0;
};

struct McMatrix {
  Matrix mean;
  Matrix standard_error;
  std::size_t draws = 0;
};

struct McScalar {
  double mean = 0.0;
  double standard_error = 0.0;
  std::size_t draws = 0;
};

/// Default Monte-Carlo sample count for the oracles below.
inline constexpr std::size_t kDefaultMcDraws = 100000;

/// Monte-Carlo oracle for the gradient of a smoothed objective.
///
/// ball:     grad F_{mu,B}(x) = E_s[d (F(x+mu s) - F(x-mu s)) / (2mu) s], s uniform on the sphere
/// gaussian: grad F_{mu,N}(x) = E_u[(F(x+mu u) - F(x-mu u)) / (2mu) u],   u ~ N(0, I)
///
/// The base environment must expose an exact objective. Draws are split into
/// fixed-size chunks with their own sub-streams and reduced in chunk order, so
/// results do not depend on `threads`.
class SmoothedFunctionOracle {
 public:
  SmoothedFunctionOracle(const Environment& base, double mu, SmoothingKernel kernel,
                         std::size_t draws = kDefaultMcDraws);

  McVector smoothed_gradient(const Point& x, const RngStream& rng, std::size_t threads = 1) const;

  /// (d / (2mu)) E_s[F(x + mu s) s]: the mean of the one-point estimator.
  McVector one_point_mean(const Point& x, const RngStream& rng, std::size_t threads = 1) const;

  double mu() const noexcept { return mu_; }
  SmoothingKernel kernel() const noexcept { return kernel_; }
  std::size_t draws() const noexcept { return draws_; }

 private:
  const Environment& base_;
  double mu_;
  SmoothingKernel kernel_;
  std::size_t draws_;
};

/// Bound on ||grad F_mu(x) - grad F(x)||.
/// ball: mu M, or mu^2 H when H is given. gaussian: sqrt(d) mu M, or d mu^2 H.
double smoothing_bias_bound(SmoothingKernel kernel, double mu, std::size_t dimension, double M,
                            std::optional<double> H = std::nullopt);

enum class MomentKind {
  sphere_kth_ssT,    // E[||s||^k s s^T] = I/d
  sphere_quad_form,  // E[(a^T s)^2 s s^T] = (a^T a I + 2 a a^T) / (d(d+2))
  gauss_kth_uuT,     // E[||u||^k u u^T] = (d+2)(d+4)...(d+k) I,  k even
  gauss_quad_form,   // E[(a^T u)^2 u u^T] = a^T a I + 2 a a^T
};

/// Closed-form moment matrix. `a` is required by the quadratic-form kinds and
/// `k` by the k-th moment kinds. Throws ArgumentError on odd or negative k for
/// the Gaussian family, negative k for the sphere, or a missing / mis-sized a.
Matrix analytic_moment(MomentKind kind, std::size_t dimension, int k = 0,
                       const std::optional<Vector>& a = std::nullopt);

/// Monte-Carlo estimate of the same moment, entrywise standard errors.
McMatrix sample_moment(MomentKind kind, std::size_t dimension, int k,
                       const std::optional<Vector>& a, std::size_t draws, const RngStream& rng,
                       std::size_t threads = 1);

/// Monte-Carlo estimate of E||u||^2 for u ~ N(0, I_d).
McScalar sample_gaussian_norm_sq(std::size_t dimension, std::size_t draws, const RngStream& rng);

/// Variance of the per-column means of `values` (m rows x K columns) divided
/// by (single-draw variance / m). Close to 1 for i.i.d. input; exactly 1 when
/// m = 1. Throws NumericalError when the input has zero variance.
double minibatch_variance_ratio(const Matrix& values);

}  // namespace zodd
