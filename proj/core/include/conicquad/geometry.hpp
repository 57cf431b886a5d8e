#pragma once

#include <array>
#include <cmath>
#include <optional>

namespace conicquad {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  constexpr Vec2 operator+(Vec2 o) const { return {x + o.x, y + o.y}; }
  constexpr Vec2 operator-(Vec2 o) const { return {x - o.x, y - o.y}; }
  constexpr Vec2 operator-() const { return {-x, -y}; }
  constexpr Vec2 operator*(double s) const { return {x * s, y * s}; }
  constexpr Vec2 operator/(double s) const { return {x / s, y / s}; }
  constexpr bool operator==(const Vec2&) const = default;
};

constexpr Vec2 operator*(double s, Vec2 v) { return {s * v.x, s * v.y}; }
constexpr double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
// det(u, v) = u1 v2 - u2 v1
constexpr double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Vec2 a) { return std::hypot(a.x, a.y); }
constexpr Vec2 lerp(Vec2 a, Vec2 b, double t) { return a + (b - a) * t; }
constexpr Vec2 midpoint(Vec2 a, Vec2 b) { return (a + b) * 0.5; }

struct Segment {
  Vec2 a;
  Vec2 b;

  Vec2 at(double t) const { return lerp(a, b, t); }
  double length() const { return norm(b - a); }
};

/// Nondegenerate plane triangle with counterclockwise vertices.
class Triangle {
 public:
  /// Reorders to counterclockwise. Throws DegenerateTriangle when the area is
  /// not positive relative to the squared diameter.
  Triangle(Vec2 a, Vec2 b, Vec2 c);

  /// Same as the constructor but returns nullopt for (numerically) flat input.
  static std::optional<Triangle> make(Vec2 a, Vec2 b, Vec2 c, double rel_area_floor = 1e-14);

  const std::array<Vec2, 3>& vertices() const { return v_; }
  Vec2 operator[](int i) const { return v_[static_cast<std::size_t>(i)]; }
  Vec2 a() const { return v_[0]; }
  Vec2 b() const { return v_[1]; }
  Vec2 c() const { return v_[2]; }

  double area() const;
  Vec2 centroid() const { return (v_[0] + v_[1] + v_[2]) / 3.0; }
  double diameter() const;
  // Side i runs from vertex i to vertex (i + 1) % 3.
  Segment side(int i) const { return {(*this)[i], (*this)[(i + 1) % 3]}; }
  // Same triangle, vertex labels rotated so that old vertex k becomes vertex 0.
  Triangle rotated(int k) const;

  bool operator==(const Triangle&) const = default;

 private:
  struct Unchecked {};
  Triangle(Unchecked, Vec2 a, Vec2 b, Vec2 c) : v_{a, b, c} {}
  std::array<Vec2, 3> v_;
};

/// x -> linear * x + shift.
class AffineMap2 {
 public:
  AffineMap2() = default;
  AffineMap2(std::array<double, 4> linear, Vec2 shift);

  static AffineMap2 identity() { return {}; }
  static AffineMap2 translation(Vec2 t) { return {{1.0, 0.0, 0.0, 1.0}, t}; }
  static AffineMap2 rotation(double angle);
  // Rotation about the origin followed by translation.
  static AffineMap2 rigid(double angle, Vec2 t);
  // Columns are the images of e1 and e2.
  static AffineMap2 from_columns(Vec2 col1, Vec2 col2, Vec2 shift);

  Vec2 operator()(Vec2 p) const {
    return {l_[0] * p.x + l_[1] * p.y + s_.x, l_[2] * p.x + l_[3] * p.y + s_.y};
  }
  Vec2 apply_linear(Vec2 p) const { return {l_[0] * p.x + l_[1] * p.y, l_[2] * p.x + l_[3] * p.y}; }

  // Row-major 2x2 matrix.
  const std::array<double, 4>& linear() const { return l_; }
  Vec2 shift() const { return s_; }
  double jacobian() const { return l_[0] * l_[3] - l_[1] * l_[2]; }

  AffineMap2 inverse() const;
  // (*this)(other(x))
  AffineMap2 after(const AffineMap2& other) const;

 private:
  std::array<double, 4> l_{1.0, 0.0, 0.0, 1.0};
  Vec2 s_{};
};

enum class PointLocation { Inside, Border, Outside };

/// Barycentric point-in-triangle test. alpha, beta are the coordinates of AP
/// in the basis (AB, AC); `eps` is the border width.
PointLocation point_in_triangle(Vec2 p, const Triangle& t, double eps = 1e-12);

}  // namespace conicquad
