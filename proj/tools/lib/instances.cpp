#include "instances.hpp"

#include <cmath>
#include <numbers>

namespace conicquad::tools {

namespace {

// a x + b y + c
Polynomial2 line(double a, double b, double c) { return Polynomial2::quadratic(0.0, 0.0, 0.0, a, b, c); }

}  // namespace

Polynomial2 InstanceGenerator::quartic() {
  Polynomial2 g;
  for (int i = 0; i <= 4; ++i)
    for (int j = 0; i + j <= 4; ++j) g.set(i, j, uniform(-1.0, 1.0));
  return g;
}

AffineMap2 InstanceGenerator::rigid_motion() {
  return AffineMap2::rigid(uniform(0.0, 2.0 * std::numbers::pi), {uniform(-0.6, 0.6), uniform(-0.6, 0.6)});
}

Triangle InstanceGenerator::triangle(double extent) {
  for (;;) {
    const Vec2 a{uniform(-extent, extent), uniform(-extent, extent)};
    const Vec2 b{uniform(-extent, extent), uniform(-extent, extent)};
    const Vec2 c{uniform(-extent, extent), uniform(-extent, extent)};
    // Keep shapes away from slivers so the battery probes the conic logic.
    if (auto t = Triangle::make(a, b, c, 0.05)) return *t;
  }
}

Polynomial2 InstanceGenerator::conic(ConicClass c) {
  // Standard-position polynomial, then a random rigid frame and a random scale.
  Polynomial2 s{2};
  switch (c) {
    case ConicClass::Ellipse: {
      const double a = uniform(0.3, 1.5);
      const double b = uniform(0.3, 1.5);
      s = Polynomial2::quadratic(1.0 / (a * a), 0.0, 1.0 / (b * b), 0.0, 0.0, -1.0);
      break;
    }
    case ConicClass::Parabola: s = Polynomial2::quadratic(-uniform(0.3, 2.0), 0.0, 0.0, 0.0, 1.0, uniform(-0.5, 0.5)); break;
    case ConicClass::Hyperbola: {
      const double mu = uniform(0.05, 0.8) * (uniform(0.0, 1.0) < 0.5 ? -1.0 : 1.0);
      s = Polynomial2::quadratic(uniform(0.3, 2.0), 0.0, -uniform(0.3, 2.0), 0.0, 0.0, -mu);
      break;
    }
    case ConicClass::CrossingLines: {
      const double t1 = uniform(0.0, std::numbers::pi);
      const double t2 = t1 + uniform(0.3, std::numbers::pi - 0.3);
      s = poly_mul(line(std::cos(t1), std::sin(t1), 0.0), line(std::cos(t2), std::sin(t2), 0.0)).with_cap(2);
      break;
    }
    case ConicClass::ParallelLines: {
      const double r1 = uniform(-0.8, 0.2);
      const double r2 = r1 + uniform(0.2, 1.0);
      s = poly_mul(line(1.0, 0.0, -r1), line(1.0, 0.0, -r2)).with_cap(2);
      break;
    }
    case ConicClass::DoubleLine: {
      const double r = uniform(-0.5, 0.5);
      s = poly_mul(line(1.0, 0.0, -r), line(1.0, 0.0, -r)).with_cap(2);
      break;
    }
    case ConicClass::SingleLine: s = line(1.0, 0.0, uniform(-0.5, 0.5)); break;
    case ConicClass::Point: s = Polynomial2::quadratic(uniform(0.3, 2.0), 0.0, uniform(0.3, 2.0), 0.0, 0.0, 0.0); break;
    case ConicClass::Empty: s = Polynomial2::quadratic(uniform(0.3, 2.0), 0.0, uniform(0.3, 2.0), 0.0, 0.0, uniform(0.1, 1.0)); break;
    case ConicClass::ConstantSign: s = Polynomial2::constant(1.0, 2); break;
  }
  // f = s o m^{-1}, so the curve is m applied to the standard curve.
  const auto m = rigid_motion();
  const double scale = uniform(0.5, 2.0) * (uniform(0.0, 1.0) < 0.5 ? -1.0 : 1.0);
  return poly_compose_affine(s, m.inverse()) * scale;
}

Instance InstanceGenerator::make(ConicClass c) {
  Instance inst{quartic(), conic(c), triangle(), c};
  return inst;
}

}  // namespace conicquad::tools
