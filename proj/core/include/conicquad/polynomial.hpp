#pragma once

#include <array>
#include <initializer_list>

#include "conicquad/geometry.hpp"

namespace conicquad {

/// Dense bivariate polynomial sum b_ij x^i y^j with i + j <= degree_cap <= 4.
///
/// Coefficients live in a fixed 15-slot triangular array; slot (i, j) is
/// (i + j)(i + j + 1) / 2 + j. Conics use the same type with degree_cap 2.
class Polynomial2 {
 public:
  static constexpr int kMaxDegree = 4;
  static constexpr int kSlots = 15;

  struct Term {
    int i;
    int j;
    double coeff;
  };

  explicit Polynomial2(int degree_cap = kMaxDegree);
  Polynomial2(std::initializer_list<Term> terms, int degree_cap = kMaxDegree);

  /// a20 x^2 + a11 xy + a02 y^2 + a10 x + a01 y + a00, degree cap 2.
  static Polynomial2 quadratic(double a20, double a11, double a02, double a10, double a01, double a00);
  static Polynomial2 constant(double c, int degree_cap = kMaxDegree);

  static constexpr int slot(int i, int j) { return (i + j) * (i + j + 1) / 2 + j; }

  double coeff(int i, int j) const;
  void set(int i, int j, double value);
  void add(int i, int j, double value);

  int degree_cap() const { return cap_; }
  /// Largest i + j with a nonzero coefficient, -1 for the zero polynomial.
  int degree() const;
  bool is_zero() const { return degree() < 0; }

  /// Same coefficients under another cap; throws DegreeOverflow if they do not fit.
  Polynomial2 with_cap(int degree_cap) const;

  double operator()(Vec2 p) const;

  Polynomial2 operator-() const;
  Polynomial2& operator+=(const Polynomial2& o);
  Polynomial2& operator-=(const Polynomial2& o);
  Polynomial2& operator*=(double s);
  friend Polynomial2 operator+(Polynomial2 a, const Polynomial2& b) { return a += b; }
  friend Polynomial2 operator-(Polynomial2 a, const Polynomial2& b) { return a -= b; }
  friend Polynomial2 operator*(Polynomial2 a, double s) { return a *= s; }
  friend Polynomial2 operator*(double s, Polynomial2 a) { return a *= s; }

  bool operator==(const Polynomial2&) const = default;

  const std::array<double, kSlots>& raw() const { return c_; }

 private:
  std::array<double, kSlots> c_{};
  int cap_;
};

/// Convolution of the coefficient arrays. Throws DegreeOverflow when
/// deg(p) + deg(q) > 4.
Polynomial2 poly_mul(const Polynomial2& p, const Polynomial2& q);

/// Graded Horner evaluation.
double poly_eval(const Polynomial2& p, Vec2 point);

/// Sum of |b_ij x^i y^j|: the magnitude against which rounding in poly_eval is judged.
double term_magnitude(const Polynomial2& p, Vec2 point);

Vec2 gradient(const Polynomial2& p, Vec2 point);

/// p o m, same degree cap.
Polynomial2 poly_compose_affine(const Polynomial2& p, const AffineMap2& m);

/// Exact integral over the triangle (0,0), (1,0), (1,1):
/// sum b_ij / ((j + 1)(i + j + 2)).
double reference_triangle_integral(const Polynomial2& g);

/// Integral of g over t through the affine pullback onto the reference triangle.
double triangle_integral(const Polynomial2& g, const Triangle& t);

/// Signed variant: negative for clockwise (a, b, c), zero for flat input.
double signed_triangle_integral(const Polynomial2& g, Vec2 a, Vec2 b, Vec2 c);

}  // namespace conicquad
