#include "zodd/oracle.hpp"

#include "zodd/errors.hpp"

namespace zodd {

double Environment::objective(const Point&) const {
  throw UnsupportedEnvironment(name() + ": exact objective is not available");
}

Vector Environment::gradient(const Point&) const {
  throw UnsupportedEnvironment(name() + ": analytic gradient is not available");
}

double SampleOracle::sample(const Point& x, const RngStream& stream) {
  if (static_cast<std::size_t>(x.size()) != dimension()) {
    throw ArgumentError("oracle dimension mismatch");
  }
  budget_.consume(1);
  RngEngine rng = stream.engine();
  return evaluate(x, rng);
}

}  // namespace zodd
