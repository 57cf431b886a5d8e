#pragma once

#include <string_view>
#include <vector>

#include "conicquad/geometry.hpp"
#include "conicquad/polynomial.hpp"
#include "conicquad/tolerances.hpp"

namespace conicquad {

enum class ConicClass {
  Ellipse,
  Parabola,
  Hyperbola,
  CrossingLines,
  ParallelLines,
  DoubleLine,
  SingleLine,
  Point,
  Empty,
  ConstantSign,
};

std::string_view to_string(ConicClass c);
bool is_nondegenerate(ConicClass c);

/// Parameters of the standard member of each family, in standard coordinates:
///   Ellipse        x^2/a^2 + y^2/b^2 - 1   (a >= b > 0)
///   Parabola       y - c x^2               (c > 0)
///   Hyperbola      x y - k                 (k != 0)
///   CrossingLines  x y
///   ParallelLines  x (x - d)               (d > 0)
///   DoubleLine     x^2
///   SingleLine     x
///   ConstantSign   1
/// For Hyperbola and CrossingLines the standard axes are the unit direction
/// vectors dir1, dir2 of the two asymptotes/lines (an oblique frame).
struct StandardParams {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
  double k = 0.0;
  double d = 0.0;
  Vec2 dir1{};
  Vec2 dir2{};
  Vec2 center{};  // ellipse/hyperbola/point center, vertex of a parabola
};

/// A polynomial of degree <= 2 together with its class and, where it exists,
/// a map to standard coordinates in which f = factor * standard_form.
class Conic {
 public:
  explicit Conic(const Polynomial2& f, const Tolerances& tol = {});

  const Polynomial2& f() const { return f_; }
  ConicClass type() const { return type_; }
  const Tolerances& tolerances() const { return tol_; }

  bool has_frame() const { return has_frame_; }
  /// World to standard coordinates. Translation plus rotation for every class
  /// except Hyperbola/CrossingLines, whose axes follow the asymptotes.
  const AffineMap2& to_standard() const { return to_std_; }
  const AffineMap2& from_standard() const { return from_std_; }
  const StandardParams& params() const { return params_; }
  /// f(p) == factor() * standard_form()(to_standard()(p)).
  double factor() const { return factor_; }
  Polynomial2 standard_form() const;

  /// Smallest classification invariant divided by the classification tolerance.
  double margin() const { return margin_; }

  /// Standard-frame branch of a point on a hyperbola: +1 or -1 (sign of the
  /// first asymptote coordinate). Zero for other classes.
  int branch_of(Vec2 world) const;

 private:
  Polynomial2 f_;
  Tolerances tol_;
  ConicClass type_ = ConicClass::ConstantSign;
  bool has_frame_ = false;
  AffineMap2 to_std_;
  AffineMap2 from_std_;
  StandardParams params_;
  double factor_ = 0.0;
  double margin_ = 0.0;
};

ConicClass conic_classify(const Polynomial2& f, const Tolerances& tol = {});

/// Classification plus standard frame. Throws InvalidArgument for the zero polynomial.
Conic normalize_conic(const Polynomial2& f, const Tolerances& tol = {});

/// |f(p)| <= on_conic * term_magnitude(f, p).
bool on_conic(const Polynomial2& f, Vec2 p, const Tolerances& tol = {});

struct SegmentHit {
  Vec2 point;
  double param = 0.0;  // in [0, 1]
  int multiplicity = 1;
  bool at_vertex = false;
};

/// Real roots of f(seg(t)) = 0 for t in [0, 1], vertex hits snapped to the
/// endpoints, roots closer than segment_param merged into one double hit.
std::vector<SegmentHit> conic_segment_intersections(const Conic& c, const Segment& seg);

/// Same, with the caller deciding which endpoints lie on the conic. A flagged
/// endpoint is deflated out of the quadratic so that the remaining root is
/// computed without cancellation.
std::vector<SegmentHit> segment_hits(const Polynomial2& f, const Segment& seg, bool start_on,
                                     bool end_on, const Tolerances& tol);

/// True iff the segment meets the conic only at its endpoints.
bool segment_is_free(const Conic& c, const Segment& seg);

/// Points of the conic whose tangent keeps b and cpt on one side: the point
/// with tangent parallel to b-cpt, then the tangency points of the tangents
/// through b and through cpt (poles and polars). Hyperbola candidates are
/// restricted to the branch of branch_hint. Throws NoTangencyCandidate if empty.
std::vector<Vec2> tangency_interior_points(const Conic& c, Vec2 branch_hint, Vec2 b, Vec2 cpt);

/// Real intersections of the conic with the full line through p along dir.
std::vector<Vec2> line_intersections(const Polynomial2& f, Vec2 p, Vec2 dir);

}  // namespace conicquad
