#include "zodd/quadratic_env.hpp"

#include <cmath>

#include <Eigen/Eigenvalues>
#include <Eigen/QR>

#include "zodd/directions.hpp"
#include "zodd/errors.hpp"

namespace zodd {

QuadraticEnv::QuadraticEnv(Matrix A, Vector b, double sigma)
    : A_(std::move(A)), b_(std::move(b)), sigma_(sigma) {
  const Eigen::Index d = b_.size();
  if (d == 0) throw ArgumentError("quadratic environment needs dimension >= 1");
  if (A_.rows() != d || A_.cols() != d) throw ArgumentError("A must be d x d with d = len(b)");
  if (!A_.allFinite() || !b_.allFinite()) throw ArgumentError("A and b must be finite");
  if (!(sigma_ >= 0.0) || !std::isfinite(sigma_)) throw ArgumentError("sigma must be >= 0");
  const double scale = std::max(1.0, A_.cwiseAbs().maxCoeff());
  if ((A_ - A_.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale) {
    throw ArgumentError("A must be symmetric");
  }
  A_ = (0.5 * (A_ + A_.transpose())).eval();
  Eigen::SelfAdjointEigenSolver<Matrix> eig(A_);
  const Vector& ev = eig.eigenvalues();
  if (ev.minCoeff() < -1e-12 * scale) throw ArgumentError("A must be positive semi-definite");
  lambda_max_ = std::max(0.0, ev.maxCoeff());
  if (ev.minCoeff() > 1e-12 * scale) {
    Vector x_star = -A_.ldlt().solve(b_);
    f_star_ = objective(x_star);
    argmin_ = std::move(x_star);
  }
}

double QuadraticEnv::objective(const Point& x) const {
  require_point(x, dimension());
  return 0.5 * x.dot(A_ * x) + b_.dot(x);
}

Vector QuadraticEnv::gradient(const Point& x) const {
  require_point(x, dimension());
  return A_ * x + b_;
}

double QuadraticEnv::draw(const Point& x, RngEngine& rng) const {
  const double F = objective(x);
  if (sigma_ == 0.0) return F;
  return F + sigma_ * standard_normal(rng);
}

std::optional<SmoothnessConstants> QuadraticEnv::constants() const {
  return SmoothnessConstants{sigma_, lambda_max_, 0.0};
}

QuadraticEnv make_quadratic_env(const QuadraticSpec& spec) {
  if (spec.dimension == 0) throw ArgumentError("dimension must be at least 1");
  if (!(spec.lambda_min >= 0.0) || !(spec.lambda_max >= spec.lambda_min)) {
    throw ArgumentError("eigenvalue range must satisfy 0 <= lambda_min <= lambda_max");
  }
  const auto d = static_cast<Eigen::Index>(spec.dimension);
  const RngStream root(spec.seed, 0x9A3D);
  RngEngine rng = root.child(1).engine();
  Matrix G(d, d);
  for (Eigen::Index j = 0; j < d; ++j) fill_standard_normal(rng, G.col(j));
  Eigen::HouseholderQR<Matrix> qr(G);
  const Matrix Q = qr.householderQ();
  Vector lambda(d);
  for (Eigen::Index i = 0; i < d; ++i) {
    const double t = d == 1 ? 1.0 : static_cast<double>(i) / static_cast<double>(d - 1);
    lambda[i] = spec.lambda_min + t * (spec.lambda_max - spec.lambda_min);
  }
  Matrix A = Q * lambda.asDiagonal() * Q.transpose();
  A = (0.5 * (A + A.transpose())).eval();
  Vector b = Vector::Zero(d);
  if (spec.random_linear_term) {
    RngEngine brng = root.child(2).engine();
    fill_standard_normal(brng, b);
  }
  return QuadraticEnv(std::move(A), std::move(b), spec.sigma);
}

}  // namespace zodd
