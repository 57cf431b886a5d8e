#include "conicquad/geometry.hpp"

#include <algorithm>

#include "conicquad/errors.hpp"

namespace conicquad {

namespace {

double squared_diameter(Vec2 a, Vec2 b, Vec2 c) {
  const auto sq = [](Vec2 v) { return dot(v, v); };
  return std::max({sq(b - a), sq(c - b), sq(a - c)});
}

}  // namespace

Triangle::Triangle(Vec2 a, Vec2 b, Vec2 c) {
  auto t = make(a, b, c);
  if (!t) throw DegenerateTriangle("triangle has zero area");
  v_ = t->v_;
}

std::optional<Triangle> Triangle::make(Vec2 a, Vec2 b, Vec2 c, double rel_area_floor) {
  for (Vec2 p : {a, b, c}) {
    if (!std::isfinite(p.x) || !std::isfinite(p.y)) return std::nullopt;
  }
  const double d = cross(b - a, c - a);
  const double diam2 = squared_diameter(a, b, c);
  if (!(std::abs(d) > rel_area_floor * diam2)) return std::nullopt;
  if (d > 0) return Triangle(Unchecked{}, a, b, c);
  return Triangle(Unchecked{}, a, c, b);
}

double Triangle::area() const { return 0.5 * cross(v_[1] - v_[0], v_[2] - v_[0]); }

double Triangle::diameter() const { return std::sqrt(squared_diameter(v_[0], v_[1], v_[2])); }

Triangle Triangle::rotated(int k) const {
  const auto at = [&](int i) { return v_[static_cast<std::size_t>((i + k) % 3)]; };
  return Triangle(Unchecked{}, at(0), at(1), at(2));
}

AffineMap2::AffineMap2(std::array<double, 4> linear, Vec2 shift) : l_(linear), s_(shift) {}

AffineMap2 AffineMap2::rotation(double angle) {
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  return {{c, -s, s, c}, {}};
}

AffineMap2 AffineMap2::rigid(double angle, Vec2 t) {
  auto m = rotation(angle);
  m.s_ = t;
  return m;
}

AffineMap2 AffineMap2::from_columns(Vec2 col1, Vec2 col2, Vec2 shift) {
  return {{col1.x, col2.x, col1.y, col2.y}, shift};
}

AffineMap2 AffineMap2::inverse() const {
  const double det = jacobian();
  if (det == 0.0 || !std::isfinite(det)) throw InvalidArgument("affine map is not invertible");
  const std::array<double, 4> inv{l_[3] / det, -l_[1] / det, -l_[2] / det, l_[0] / det};
  const Vec2 shift{-(inv[0] * s_.x + inv[1] * s_.y), -(inv[2] * s_.x + inv[3] * s_.y)};
  return {inv, shift};
}

AffineMap2 AffineMap2::after(const AffineMap2& o) const {
  const auto& a = l_;
  const auto& b = o.l_;
  const std::array<double, 4> l{a[0] * b[0] + a[1] * b[2], a[0] * b[1] + a[1] * b[3],
                                a[2] * b[0] + a[3] * b[2], a[2] * b[1] + a[3] * b[3]};
  return {l, (*this)(o.s_)};
}

PointLocation point_in_triangle(Vec2 p, const Triangle& t, double eps) {
  const Vec2 ab = t.b() - t.a();
  const Vec2 ac = t.c() - t.a();
  const Vec2 ap = p - t.a();
  const double den = cross(ab, ac);
  const double alpha = cross(ap, ac) / den;
  const double beta = cross(ab, ap) / den;

  if (alpha > eps && beta > eps && alpha + beta < 1.0 - eps) return PointLocation::Inside;

  const auto in_unit = [eps](double s) { return s >= -eps && s <= 1.0 + eps; };
  if ((std::abs(alpha) <= eps && in_unit(beta)) || (std::abs(beta) <= eps && in_unit(alpha)) ||
      (std::abs(alpha + beta - 1.0) <= eps && in_unit(alpha))) {
    return PointLocation::Border;
  }
  return PointLocation::Outside;
}

}  // namespace conicquad
