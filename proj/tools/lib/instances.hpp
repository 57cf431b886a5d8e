#pragma once

#include <cstdint>
#include <random>

#include "conicquad/conic.hpp"
#include "conicquad/geometry.hpp"
#include "conicquad/polynomial.hpp"

namespace conicquad::tools {

struct Instance {
  Polynomial2 g;
  Polynomial2 f{2};
  Triangle t;
  ConicClass intended;
};

/// Deterministic random (g, f, t) instances. Each conic class is built from its
/// geometric definition in a random rigid frame near the unit square, so the
/// triangle usually meets the curve.
class InstanceGenerator {
 public:
  explicit InstanceGenerator(std::uint64_t seed) : rng_(seed) {}

  Instance make(ConicClass c);
  Polynomial2 quartic();
  Polynomial2 conic(ConicClass c);
  Triangle triangle(double extent = 1.5);
  AffineMap2 rigid_motion();

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }

 private:
  std::mt19937_64 rng_;
};

}  // namespace conicquad::tools
