#include "zodd/synthetic.hpp"

#include <cmath>

#include "zodd/directions.hpp"
#include "zodd/errors.hpp"

namespace zodd {

Population make_synthetic_population(std::uint64_t seed, std::size_t count, std::size_t features,
                                     double separation) {
  if (count == 0) throw ArgumentError("population count must be at least 1");
  if (features == 0) throw ArgumentError("feature count must be at least 1");
  if (!std::isfinite(separation)) throw ArgumentError("separation must be finite");
  const auto k = static_cast<Eigen::Index>(features);
  const Vector direction = Vector::Ones(k) / std::sqrt(static_cast<double>(features));
  const RngStream root(seed, 0x90B);
  Population out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    RngEngine rng = root.child(i).engine();
    Agent a;
    a.label = i % 2 == 0 ? 1 : 0;
    a.features = Vector(k);
    fill_standard_normal(rng, a.features);
    a.features += (a.label == 1 ? 0.5 : -0.5) * separation * direction;
    out.push_back(std::move(a));
  }
  return out;
}

PriceVectors make_synthetic_prices(std::uint64_t seed, std::size_t n) {
  if (n == 0) throw ArgumentError("product count must be at least 1");
  const auto size = static_cast<Eigen::Index>(n);
  RngEngine rng = RngStream(seed, 0x9817CE).engine();
  PriceVectors out{Vector(size), Vector(size)};
  for (Eigen::Index i = 0; i < size; ++i) out.theta[i] = 0.5 + 1.5 * rng.uniform();
  for (Eigen::Index i = 0; i < size; ++i) out.rho[i] = 0.25 + 0.25 * rng.uniform();
  return out;
}

}  // namespace zodd
