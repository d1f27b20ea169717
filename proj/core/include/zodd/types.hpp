#pragma once

#include <cstddef>

#include <Eigen/Core>

namespace zodd {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// Decision vector. Invariants (checked by `require_point`): non-empty, finite.
using Point = Eigen::VectorXd;

/// Throws ArgumentError unless `x` has `dimension` finite entries.
void require_point(const Point& x, std::size_t dimension);

}  // namespace zodd
