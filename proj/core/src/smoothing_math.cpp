#include "zodd/smoothing_math.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "zodd/directions.hpp"
#include "zodd/errors.hpp"
#include "zodd/parallel.hpp"

namespace zodd {
namespace {

// Draws per work chunk. Fixed so that chunk boundaries, and hence results, do
// not depend on the worker count.
constexpr std::size_t kChunk = 4096;

std::size_t chunk_count(std::size_t draws) { return (draws + kChunk - 1) / kChunk; }

std::size_t chunk_size(std::size_t chunk, std::size_t draws) {
  return std::min(kChunk, draws - chunk * kChunk);
}

struct Moments {
  Matrix sum;
  Matrix sum_sq;
};

// Chunked accumulation of sample(engine) -> Matrix, reduced in chunk order.
template <class Sampler>
Moments accumulate(std::size_t rows, std::size_t cols, std::size_t draws, const RngStream& rng,
                   std::size_t threads, Sampler&& sampler) {
  const auto r = static_cast<Eigen::Index>(rows);
  const auto c = static_cast<Eigen::Index>(cols);
  auto partial = parallel_map(chunk_count(draws), threads, [&](std::size_t chunk) {
    Moments acc{Matrix::Zero(r, c), Matrix::Zero(r, c)};
    RngEngine engine = rng.child(chunk).engine();
    const std::size_t n = chunk_size(chunk, draws);
    for (std::size_t i = 0; i < n; ++i) {
      const Matrix value = sampler(engine);
      acc.sum += value;
      acc.sum_sq += value.cwiseAbs2();
    }
    return acc;
  });
  Moments total{Matrix::Zero(r, c), Matrix::Zero(r, c)};
  for (const auto& p : partial) {
    total.sum += p.sum;
    total.sum_sq += p.sum_sq;
  }
  return total;
}

McMatrix finish(const Moments& m, std::size_t draws) {
  const double k = static_cast<double>(draws);
  McMatrix out;
  out.draws = draws;
  out.mean = m.sum / k;
  if (draws < 2) {
    out.standard_error = Matrix::Zero(out.mean.rows(), out.mean.cols());
    return out;
  }
  const Matrix var = ((m.sum_sq - k * out.mean.cwiseAbs2()) / (k - 1.0)).cwiseMax(0.0);
  out.standard_error = (var / k).cwiseSqrt();
  return out;
}

McVector to_vector(const McMatrix& m) {
  return McVector{m.mean.col(0), m.standard_error.col(0), m.draws};
}

void require_a(const std::optional<Vector>& a, std::size_t dimension) {
  if (!a) throw ArgumentError("quadratic-form moment requires the vector a");
  if (static_cast<std::size_t>(a->size()) != dimension) {
    throw ArgumentError("vector a has length " + std::to_string(a->size()) + ", expected " +
                        std::to_string(dimension));
  }
}

void require_k(MomentKind kind, int k) {
  if (k < 0) throw ArgumentError("moment order k must be non-negative");
  if (kind == MomentKind::gauss_kth_uuT && k % 2 != 0) {
    throw ArgumentError("moment order k must be even");
  }
}

}  // namespace

SmoothedFunctionOracle::SmoothedFunctionOracle(const Environment& base, double mu,
                                               SmoothingKernel kernel, std::size_t draws)
    : base_(base), mu_(mu), kernel_(kernel), draws_(draws) {
  if (!(mu > 0.0) || !std::isfinite(mu)) throw ArgumentError("mu must be positive and finite");
  if (draws == 0) throw ArgumentError("Monte-Carlo draw count must be at least 1");
}

McVector SmoothedFunctionOracle::smoothed_gradient(const Point& x, const RngStream& rng,
                                                   std::size_t threads) const {
  if (!base_.has_exact_objective()) {
    throw UnsupportedEnvironment("environment '" + base_.name() + "' has no exact objective");
  }
  const std::size_t d = base_.dimension();
  require_point(x, d);
  const bool ball = kernel_ == SmoothingKernel::ball;
  const double scale = (ball ? static_cast<double>(d) : 1.0) / (2.0 * mu_);
  const auto moments = accumulate(d, 1, draws_, rng, threads, [&](RngEngine& engine) {
    const Vector v = ball ? draw_sphere(engine, d).coords : draw_gaussian(engine, d).coords;
    const double diff = base_.objective(x + mu_ * v) - base_.objective(x - mu_ * v);
    return Matrix(scale * diff * v);
  });
  return to_vector(finish(moments, draws_));
}

McVector SmoothedFunctionOracle::one_point_mean(const Point& x, const RngStream& rng,
                                                std::size_t threads) const {
  if (!base_.has_exact_objective()) {
    throw UnsupportedEnvironment("environment '" + base_.name() + "' has no exact objective");
  }
  const std::size_t d = base_.dimension();
  require_point(x, d);
  const double scale = static_cast<double>(d) / (2.0 * mu_);
  const auto moments = accumulate(d, 1, draws_, rng, threads, [&](RngEngine& engine) {
    const Vector s = draw_sphere(engine, d).coords;
    return Matrix(scale * base_.objective(x + mu_ * s) * s);
  });
  return to_vector(finish(moments, draws_));
}

double smoothing_bias_bound(SmoothingKernel kernel, double mu, std::size_t dimension, double M,
                            std::optional<double> H) {
  if (!(mu > 0.0)) throw ArgumentError("mu must be positive");
  if (dimension == 0) throw ArgumentError("dimension must be at least 1");
  if (H && *H < 0.0) throw ArgumentError("H must be non-negative");
  if (!H && M < 0.0) throw ArgumentError("M must be non-negative");
  const double d = static_cast<double>(dimension);
  if (kernel == SmoothingKernel::ball) return H ? mu * mu * *H : mu * M;
  return H ? d * mu * mu * *H : std::sqrt(d) * mu * M;
}

Matrix analytic_moment(MomentKind kind, std::size_t dimension, int k,
                       const std::optional<Vector>& a) {
  if (dimension == 0) throw ArgumentError("dimension must be at least 1");
  const auto n = static_cast<Eigen::Index>(dimension);
  const double d = static_cast<double>(dimension);
  const Matrix I = Matrix::Identity(n, n);
  switch (kind) {
    case MomentKind::sphere_kth_ssT:
      require_k(kind, k);
      return I / d;
    case MomentKind::gauss_kth_uuT: {
      require_k(kind, k);
      double factor = 1.0;
      for (int j = 2; j <= k; j += 2) factor *= d + j;
      return factor * I;
    }
    case MomentKind::sphere_quad_form:
      require_a(a, dimension);
      return (a->squaredNorm() * I + 2.0 * (*a) * a->transpose()) / (d * (d + 2.0));
    case MomentKind::gauss_quad_form:
      require_a(a, dimension);
      return a->squaredNorm() * I + 2.0 * (*a) * a->transpose();
  }
  throw ArgumentError("unknown moment kind");
}

McMatrix sample_moment(MomentKind kind, std::size_t dimension, int k,
                       const std::optional<Vector>& a, std::size_t draws, const RngStream& rng,
                       std::size_t threads) {
  // Validates arguments with the same rules as the closed form.
  (void)analytic_moment(kind, dimension, k, a);
  if (draws == 0) throw ArgumentError("Monte-Carlo draw count must be at least 1");
  const bool sphere = kind == MomentKind::sphere_kth_ssT || kind == MomentKind::sphere_quad_form;
  const bool quad = kind == MomentKind::sphere_quad_form || kind == MomentKind::gauss_quad_form;
  const auto moments =
      accumulate(dimension, dimension, draws, rng, threads, [&](RngEngine& engine) {
        const Vector v =
            sphere ? draw_sphere(engine, dimension).coords : draw_gaussian(engine, dimension).coords;
        const double weight = quad ? std::pow(a->dot(v), 2) : std::pow(v.norm(), k);
        return Matrix(weight * v * v.transpose());
      });
  return finish(moments, draws);
}

McScalar sample_gaussian_norm_sq(std::size_t dimension, std::size_t draws, const RngStream& rng) {
  if (dimension == 0) throw ArgumentError("dimension must be at least 1");
  if (draws == 0) throw ArgumentError("Monte-Carlo draw count must be at least 1");
  const auto moments = accumulate(1, 1, draws, rng, 1, [&](RngEngine& engine) {
    return Matrix::Constant(1, 1, draw_gaussian(engine, dimension).coords.squaredNorm());
  });
  const McMatrix m = finish(moments, draws);
  return McScalar{m.mean(0, 0), m.standard_error(0, 0), draws};
}

double minibatch_variance_ratio(const Matrix& values) {
  const Eigen::Index m = values.rows();
  const Eigen::Index K = values.cols();
  if (m < 1 || K < 2) throw ArgumentError("minibatch_variance_ratio needs m >= 1 and K >= 2");
  const Eigen::RowVectorXd means = values.colwise().mean();
  const double between = (means.array() - means.mean()).square().sum() / static_cast<double>(K - 1);
  const double n = static_cast<double>(m * K);
  const double single = (values.array() - values.mean()).square().sum() / (n - 1.0);
  if (!(single > 0.0)) throw NumericalError("variance ratio undefined for zero-variance input");
  return between / (single / static_cast<double>(m));
}

}  // namespace zodd
