#pragma once

#include "conicquad/geometry.hpp"
#include "conicquad/polynomial.hpp"

namespace conicquad::detail {

// Sign of f on a triangle known to avoid {f = 0} in its interior: the centroid,
// or among a few interior points the one farthest from the curve relative to
// rounding.
inline bool nonnegative_inside(const Polynomial2& f, const Triangle& t) {
  static constexpr double kBary[][3] = {
      {1.0 / 3, 1.0 / 3, 1.0 / 3}, {0.6, 0.2, 0.2}, {0.2, 0.6, 0.2}, {0.2, 0.2, 0.6},
      {0.1, 0.45, 0.45},           {0.45, 0.1, 0.45}, {0.45, 0.45, 0.1},
  };
  double best = -1.0;
  double value = 0.0;
  for (const auto& w : kBary) {
    const Vec2 p = t[0] * w[0] + t[1] * w[1] + t[2] * w[2];
    const double v = poly_eval(f, p);
    const double mag = term_magnitude(f, p);
    const double score = mag > 0.0 ? std::abs(v) / mag : 1.0;
    if (score > best) {
      best = score;
      value = v;
    }
    if (w == kBary[0] && score > 1e-6) break;
  }
  return value >= 0.0;
}

}  // namespace conicquad::detail
