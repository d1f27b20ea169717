#include "zodd/directions.hpp"

#include <random>
#include <string>

#include "zodd/errors.hpp"

namespace zodd {
namespace {

void require_dimension(std::size_t dimension) {
  if (dimension == 0) throw ArgumentError("direction dimension must be at least 1");
}

}  // namespace

void fill_standard_normal(RngEngine& rng, Eigen::Ref<Vector> out) {
  std::normal_distribution<double> normal;
  for (Eigen::Index k = 0; k < out.size(); ++k) out[k] = normal(rng);
}

double standard_normal(RngEngine& rng) {
  std::normal_distribution<double> normal;
  return normal(rng);
}

Direction draw_coordinate(std::size_t index, std::size_t dimension) {
  require_dimension(dimension);
  if (index >= dimension) {
    throw ArgumentError("coordinate index " + std::to_string(index) + " out of range for d=" +
                        std::to_string(dimension));
  }
  Direction dir{Vector::Zero(static_cast<Eigen::Index>(dimension)), DirectionKind::coordinate,
                index};
  dir.coords[static_cast<Eigen::Index>(index)] = 1.0;
  return dir;
}

Direction draw_sphere(RngEngine& rng, std::size_t dimension) {
  require_dimension(dimension);
  Direction dir{Vector(static_cast<Eigen::Index>(dimension)), DirectionKind::sphere, 0};
  double norm = 0.0;
  do {
    fill_standard_normal(rng, dir.coords);
    norm = dir.coords.norm();
  } while (!(norm > 0.0));
  dir.coords /= norm;
  return dir;
}

Direction draw_sphere(const RngStream& stream, std::size_t dimension) {
  RngEngine rng = stream.engine();
  return draw_sphere(rng, dimension);
}

Direction draw_gaussian(RngEngine& rng, std::size_t dimension) {
  require_dimension(dimension);
  Direction dir{Vector(static_cast<Eigen::Index>(dimension)), DirectionKind::gaussian, 0};
  fill_standard_normal(rng, dir.coords);
  return dir;
}

Direction draw_gaussian(const RngStream& stream, std::size_t dimension) {
  RngEngine rng = stream.engine();
  return draw_gaussian(rng, dimension);
}

}  // namespace zodd
