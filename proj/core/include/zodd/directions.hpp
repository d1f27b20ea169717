#pragma once

#include <cstddef>

#include "zodd/rng.hpp"
#include "zodd/types.hpp"

namespace zodd {

enum class DirectionKind { coordinate, sphere, gaussian };

/// A probe direction v used by the finite-difference estimators.
///
/// coordinate: the basis vector e_index. sphere: unit norm. gaussian: N(0, I).
struct Direction {
  Vector coords;
  DirectionKind kind = DirectionKind::gaussian;
  std::size_t index = 0;  // meaningful for coordinate directions only
};

/// Basis vector e_index (zero-based). Throws ArgumentError if index >= dimension.
Direction draw_coordinate(std::size_t index, std::size_t dimension);

/// Uniform on the unit sphere S^{d-1}, by normalising a standard Gaussian draw.
Direction draw_sphere(RngEngine& rng, std::size_t dimension);
Direction draw_sphere(const RngStream& stream, std::size_t dimension);

/// d independent standard normal entries.
Direction draw_gaussian(RngEngine& rng, std::size_t dimension);
Direction draw_gaussian(const RngStream& stream, std::size_t dimension);

/// Fills `out` with independent standard normal draws.
void fill_standard_normal(RngEngine& rng, Eigen::Ref<Vector> out);

/// Single standard normal draw.
double standard_normal(RngEngine& rng);

}  // namespace zodd
