#include <algorithm>
#include <vector>

#include "conicquad/basecase.hpp"
#include "conicquad/errors.hpp"
#include "probe.hpp"

namespace conicquad {

namespace {

// L(X) = n . X + off
struct Linear {
  Vec2 n;
  double off;
  double operator()(Vec2 p) const { return dot(n, p) + off; }
  Linear operator-() const { return {-n, -off}; }
};

Linear row(const AffineMap2& m, int r) {
  const auto& l = m.linear();
  return r == 0 ? Linear{{l[0], l[1]}, m.shift().x} : Linear{{l[2], l[3]}, m.shift().y};
}

using Polygon = std::vector<Vec2>;

// Part of a convex polygon where L >= 0.
Polygon clip(const Polygon& poly, const Linear& l) {
  Polygon out;
  const std::size_t n = poly.size();
  for (std::size_t k = 0; k < n; ++k) {
    const Vec2 a = poly[k];
    const Vec2 b = poly[(k + 1) % n];
    const double la = l(a);
    const double lb = l(b);
    if (la >= 0.0) out.push_back(a);
    if ((la > 0.0 && lb < 0.0) || (la < 0.0 && lb > 0.0)) out.push_back(lerp(a, b, la / (la - lb)));
  }
  return out;
}

struct Accumulator {
  const Polynomial2& g;
  DegenerateResult result;

  // Adds weight * integral over the convex polygon, fanned from its first vertex.
  void add(const Polygon& poly, double weight, std::string_view label) {
    for (std::size_t k = 1; k + 1 < poly.size(); ++k) {
      auto t = Triangle::make(poly[0], poly[k], poly[k + 1]);
      if (!t) continue;
      const double v = triangle_integral(g, *t);
      result.pieces.push_back({*t, weight, v, label});
      result.value += weight * v;
      result.operand_scale = std::max(result.operand_scale, std::abs(v));
    }
  }
};

Polygon polygon_of(const Triangle& t) { return {t[0], t[1], t[2]}; }

void crossing_lines(Accumulator& acc, const Conic& c, const Triangle& t) {
  const Linear u = row(c.to_standard(), 0);
  const Linear v = row(c.to_standard(), 1);
  const double fac = c.factor();
  const Polygon tri = polygon_of(t);

  // Every vertex in one closed quadrant: constant sign.
  for (int su : {1, -1}) {
    for (int sv : {1, -1}) {
      bool all = true;
      for (int i = 0; i < 3; ++i) all = all && su * u(t[i]) >= 0.0 && sv * v(t[i]) >= 0.0;
      if (all) {
        if (fac * su * sv >= 0.0) acc.add(tri, 1.0, "quadrant:full");
        return;
      }
    }
  }
  // Every vertex on one side of a line: only the other line cuts.
  for (int s : {1, -1}) {
    bool u_side = true;
    bool v_side = true;
    for (int i = 0; i < 3; ++i) {
      u_side = u_side && s * u(t[i]) >= 0.0;
      v_side = v_side && s * v(t[i]) >= 0.0;
    }
    if (u_side) {
      acc.add(clip(tri, fac * s > 0.0 ? v : -v), 1.0, "half-plane");
      return;
    }
    if (v_side) {
      acc.add(clip(tri, fac * s > 0.0 ? u : -u), 1.0, "half-plane");
      return;
    }
  }

  // Wanted quadrant gamma = {su u >= 0, sv v >= 0} with fac su sv > 0.
  const int su = 1;
  const int sv = fac > 0.0 ? 1 : -1;
  const Linear hu = su > 0 ? u : -u;
  const Linear hv = sv > 0 ? v : -v;
  const Vec2 center = c.from_standard()({0.0, 0.0});
  if (point_in_triangle(center, t, c.tolerances().barycentric) == PointLocation::Inside) {
    // wanted = T - (gamma + one neighbour) - (gamma + other neighbour) + 2 gamma
    acc.add(tri, 1.0, "triangle");
    acc.add(clip(tri, hv), -1.0, "half-plane");
    acc.add(clip(tri, hu), -1.0, "half-plane");
    acc.add(clip(clip(tri, hu), hv), 2.0, "quadrant");
    return;
  }
  acc.add(clip(clip(tri, hu), hv), 1.0, "quadrant");
  acc.add(clip(clip(tri, -hu), -hv), 1.0, "quadrant");
}

}  // namespace

DegenerateResult degenerate_integral(const Polynomial2& g, const Conic& c, const Triangle& t) {
  Accumulator acc{g, {}};
  const Polygon tri = polygon_of(t);
  switch (c.type()) {
    case ConicClass::SingleLine: {
      const Linear x = row(c.to_standard(), 0);
      acc.add(clip(tri, c.factor() > 0.0 ? x : -x), 1.0, "half-plane");
      break;
    }
    case ConicClass::ParallelLines: {
      // factor * x (x - d)
      const Linear x = row(c.to_standard(), 0);
      const Linear xd{x.n, x.off - c.params().d};
      if (c.factor() > 0.0) {
        acc.add(clip(tri, -x), 1.0, "outside-strip");
        acc.add(clip(tri, xd), 1.0, "outside-strip");
      } else {
        acc.add(clip(clip(tri, x), -xd), 1.0, "strip");
      }
      break;
    }
    case ConicClass::CrossingLines: crossing_lines(acc, c, t); break;
    case ConicClass::ConstantSign:
      if (c.factor() >= 0.0) acc.add(tri, 1.0, "constant");
      break;
    case ConicClass::DoubleLine:
    case ConicClass::Point:
    case ConicClass::Empty:
      if (detail::nonnegative_inside(c.f(), t)) acc.add(tri, 1.0, "probe:full");
      break;
    default: throw InvalidArgument("degenerate_integral: conic is nondegenerate");
  }
  // Operand scale is only meaningful for signed sums.
  if (acc.result.pieces.size() <= 1 ||
      std::all_of(acc.result.pieces.begin(), acc.result.pieces.end(), [](const RegionPiece& p) { return p.weight > 0; }))
    acc.result.operand_scale = 0.0;
  return acc.result;
}

}  // namespace conicquad
