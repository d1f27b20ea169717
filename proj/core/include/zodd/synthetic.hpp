#pragma once

#include <cstddef>
#include <cstdint>

#include "zodd/strategic_env.hpp"
#include "zodd/types.hpp"

namespace zodd {

/// Balanced labels (alternating 1, 0, ...). Features ~ N(+-(separation/2) e, I)
/// with e the unit all-ones direction, so the class means lie `separation` apart.
Population make_synthetic_population(std::uint64_t seed, std::size_t count,
                                     std::size_t features = 11, double separation = 1.0);

struct PriceVectors {
  Vector theta;  // ~ U[0.5, 2.0]
  Vector rho;    // ~ U[0.25, 0.5]
};

PriceVectors make_synthetic_prices(std::uint64_t seed, std::size_t n);

}  // namespace zodd
