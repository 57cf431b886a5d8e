#pragma once

#include <string_view>
#include <vector>

#include "conicquad/conic.hpp"
#include "conicquad/geometry.hpp"
#include "conicquad/polynomial.hpp"
#include "conicquad/subdivide.hpp"

namespace conicquad {

/// Integral of cos^i sin^j over a full period, i + j <= 6.
double trig_moment(int i, int j);

/// Integral of cos^i sin^j over [t1, t2], i + j <= 6.
double trig_partial(int i, int j, double t1, double t2);

/// Integral of g over the bounded interior of an ellipse.
double ellipse_interior_integral(const Polynomial2& g, const Conic& e);

enum class EllipsePosition { TriangleInsideEllipse, EllipseInsideTriangle, Disjoint };

/// Relative position of an ellipse and a triangle whose boundary does not
/// cross it.
EllipsePosition ellipse_triangle_position(const Conic& e, const Triangle& t);

// The chord integrals below work in standard coordinates: g is already
// composed with the standard frame and the points lie on the standard curve.

/// Region between the chord p1-p2 of x^2/a^2 + y^2/b^2 = 1 and the arc running
/// counterclockwise from p1 to p2.
double ellipse_segment_integral(const Polynomial2& g, double a, double b, Vec2 p1, Vec2 p2);

/// Circle of radius r, same convention.
double circle_segment_integral(const Polynomial2& g, double r, Vec2 p1, Vec2 p2);

/// Region between y = c x^2 and its chord over x in [x1, x2] (either order).
double parabola_chord_integral(const Polynomial2& g, double c, double x1, double x2);

/// Region between x y = k and its chord over x in [x1, x2] (either order),
/// both on one branch.
double hyperbola_chord_integral(const Polynomial2& g, double k, double x1, double x2);

struct BaseResult {
  double value = 0.0;
  // Largest operand when value is a complement difference, zero otherwise.
  double operand_scale = 0.0;
  std::string_view route;
};

/// Integral of g over piece.tri intersected with {f >= 0}, piece certified free.
BaseResult integrate_free_triangle(const Polynomial2& g, const Conic& c, const Piece& piece);

/// Same, recounting the boundary contacts from scratch.
double integrate_free_triangle(const Polynomial2& g, const Conic& c, const Triangle& t, FreeCase status);

struct RegionPiece {
  Triangle tri;
  double weight = 1.0;  // coefficient of this piece in the signed sum
  double value = 0.0;   // unweighted integral over tri
  std::string_view label;
};

struct DegenerateResult {
  double value = 0.0;
  std::vector<RegionPiece> pieces;
  double operand_scale = 0.0;
};

/// Integral over t intersected with {f >= 0} for the degenerate classes, by
/// clipping t against the lines of the conic.
DegenerateResult degenerate_integral(const Polynomial2& g, const Conic& c, const Triangle& t);

}  // namespace conicquad
