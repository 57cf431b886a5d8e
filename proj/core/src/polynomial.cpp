#include "conicquad/polynomial.hpp"

#include <cmath>
#include <string>

#include "conicquad/errors.hpp"

namespace conicquad {

namespace {

using Coeffs = std::array<double, Polynomial2::kSlots>;

void check_index(int i, int j, int cap) {
  if (i < 0 || j < 0) throw InvalidArgument("negative monomial exponent");
  if (i + j > cap) {
    throw DegreeOverflow("monomial x^" + std::to_string(i) + " y^" + std::to_string(j) +
                         " exceeds degree cap " + std::to_string(cap));
  }
}

int degree_of(const Coeffs& c) {
  for (int d = Polynomial2::kMaxDegree; d >= 0; --d) {
    for (int j = 0; j <= d; ++j) {
      if (c[static_cast<std::size_t>(Polynomial2::slot(d - j, j))] != 0.0) return d;
    }
  }
  return -1;
}

// Truncating product; callers guarantee the true degree fits.
Coeffs multiply(const Coeffs& a, int deg_a, const Coeffs& b, int deg_b) {
  Coeffs out{};
  for (int da = 0; da <= deg_a; ++da) {
    for (int ja = 0; ja <= da; ++ja) {
      const double ca = a[static_cast<std::size_t>(Polynomial2::slot(da - ja, ja))];
      if (ca == 0.0) continue;
      for (int db = 0; db <= deg_b && da + db <= Polynomial2::kMaxDegree; ++db) {
        for (int jb = 0; jb <= db; ++jb) {
          const double cb = b[static_cast<std::size_t>(Polynomial2::slot(db - jb, jb))];
          out[static_cast<std::size_t>(Polynomial2::slot(da - ja + db - jb, ja + jb))] += ca * cb;
        }
      }
    }
  }
  return out;
}

}  // namespace

Polynomial2::Polynomial2(int degree_cap) : cap_(degree_cap) {
  if (degree_cap < 0 || degree_cap > kMaxDegree) throw InvalidArgument("degree cap must be in [0, 4]");
}

Polynomial2::Polynomial2(std::initializer_list<Term> terms, int degree_cap) : Polynomial2(degree_cap) {
  for (const auto& t : terms) add(t.i, t.j, t.coeff);
}

Polynomial2 Polynomial2::quadratic(double a20, double a11, double a02, double a10, double a01,
                                   double a00) {
  Polynomial2 p(2);
  p.set(2, 0, a20);
  p.set(1, 1, a11);
  p.set(0, 2, a02);
  p.set(1, 0, a10);
  p.set(0, 1, a01);
  p.set(0, 0, a00);
  return p;
}

Polynomial2 Polynomial2::constant(double c, int degree_cap) {
  Polynomial2 p(degree_cap);
  p.set(0, 0, c);
  return p;
}

double Polynomial2::coeff(int i, int j) const {
  if (i < 0 || j < 0 || i + j > cap_) return 0.0;
  return c_[static_cast<std::size_t>(slot(i, j))];
}

void Polynomial2::set(int i, int j, double value) {
  check_index(i, j, cap_);
  if (!std::isfinite(value)) throw InvalidArgument("polynomial coefficient is not finite");
  c_[static_cast<std::size_t>(slot(i, j))] = value;
}

void Polynomial2::add(int i, int j, double value) { set(i, j, coeff(i, j) + value); }

int Polynomial2::degree() const { return degree_of(c_); }

Polynomial2 Polynomial2::with_cap(int degree_cap) const {
  if (degree() > degree_cap) throw DegreeOverflow("polynomial degree exceeds requested cap");
  Polynomial2 out(degree_cap);
  out.c_ = c_;
  return out;
}

double Polynomial2::operator()(Vec2 p) const { return poly_eval(*this, p); }

Polynomial2 Polynomial2::operator-() const {
  Polynomial2 out(*this);
  for (auto& v : out.c_) v = -v;
  return out;
}

Polynomial2& Polynomial2::operator+=(const Polynomial2& o) {
  if (o.degree() > cap_) throw DegreeOverflow("sum exceeds degree cap");
  for (std::size_t k = 0; k < c_.size(); ++k) c_[k] += o.c_[k];
  return *this;
}

Polynomial2& Polynomial2::operator-=(const Polynomial2& o) { return *this += -o; }

Polynomial2& Polynomial2::operator*=(double s) {
  for (auto& v : c_) v *= s;
  return *this;
}

Polynomial2 poly_mul(const Polynomial2& p, const Polynomial2& q) {
  const int dp = p.degree();
  const int dq = q.degree();
  if (dp < 0 || dq < 0) return Polynomial2(Polynomial2::kMaxDegree);
  if (dp + dq > Polynomial2::kMaxDegree) {
    throw DegreeOverflow("product degree " + std::to_string(dp + dq) + " exceeds 4");
  }
  Polynomial2 out(Polynomial2::kMaxDegree);
  const auto prod = multiply(p.raw(), dp, q.raw(), dq);
  for (int d = 0; d <= dp + dq; ++d) {
    for (int j = 0; j <= d; ++j) out.set(d - j, j, prod[static_cast<std::size_t>(Polynomial2::slot(d - j, j))]);
  }
  return out;
}

double poly_eval(const Polynomial2& p, Vec2 pt) {
  const int deg = p.degree();
  if (deg < 0) return 0.0;
  // sum_i x^i (sum_j b_ij y^j), Horner in both variables.
  double outer = 0.0;
  for (int i = deg; i >= 0; --i) {
    double inner = 0.0;
    for (int j = deg - i; j >= 0; --j) inner = inner * pt.y + p.coeff(i, j);
    outer = outer * pt.x + inner;
  }
  return outer;
}

double term_magnitude(const Polynomial2& p, Vec2 pt) {
  const int deg = p.degree();
  const double ax = std::abs(pt.x);
  const double ay = std::abs(pt.y);
  double outer = 0.0;
  for (int i = deg; i >= 0; --i) {
    double inner = 0.0;
    for (int j = deg - i; j >= 0; --j) inner = inner * ay + std::abs(p.coeff(i, j));
    outer = outer * ax + inner;
  }
  return outer;
}

Vec2 gradient(const Polynomial2& p, Vec2 pt) {
  const int deg = p.degree();
  std::array<double, Polynomial2::kMaxDegree + 1> px{1.0};
  std::array<double, Polynomial2::kMaxDegree + 1> py{1.0};
  for (int k = 1; k <= deg; ++k) {
    px[static_cast<std::size_t>(k)] = px[static_cast<std::size_t>(k - 1)] * pt.x;
    py[static_cast<std::size_t>(k)] = py[static_cast<std::size_t>(k - 1)] * pt.y;
  }
  double gx = 0.0;
  double gy = 0.0;
  for (int d = 1; d <= deg; ++d) {
    for (int j = 0; j <= d; ++j) {
      const int i = d - j;
      const double c = p.coeff(i, j);
      if (c == 0.0) continue;
      if (i > 0) gx += c * i * px[static_cast<std::size_t>(i - 1)] * py[static_cast<std::size_t>(j)];
      if (j > 0) gy += c * j * px[static_cast<std::size_t>(i)] * py[static_cast<std::size_t>(j - 1)];
    }
  }
  return {gx, gy};
}

Polynomial2 poly_compose_affine(const Polynomial2& p, const AffineMap2& m) {
  const int deg = p.degree();
  Polynomial2 out(p.degree_cap());
  if (deg < 0) return out;

  const auto& l = m.linear();
  const Vec2 s = m.shift();
  // Powers of X = l0 u + l1 v + s.x and Y = l2 u + l3 v + s.y.
  std::array<Coeffs, Polynomial2::kMaxDegree + 1> xp{};
  std::array<Coeffs, Polynomial2::kMaxDegree + 1> yp{};
  Coeffs x1{};
  Coeffs y1{};
  x1[0] = s.x;
  x1[1] = l[0];
  x1[2] = l[1];
  y1[0] = s.y;
  y1[1] = l[2];
  y1[2] = l[3];
  xp[0][0] = 1.0;
  yp[0][0] = 1.0;
  for (int k = 1; k <= deg; ++k) {
    xp[static_cast<std::size_t>(k)] = multiply(xp[static_cast<std::size_t>(k - 1)], k - 1, x1, 1);
    yp[static_cast<std::size_t>(k)] = multiply(yp[static_cast<std::size_t>(k - 1)], k - 1, y1, 1);
  }

  Coeffs acc{};
  for (int d = 0; d <= deg; ++d) {
    for (int j = 0; j <= d; ++j) {
      const int i = d - j;
      const double c = p.coeff(i, j);
      if (c == 0.0) continue;
      const auto term = multiply(xp[static_cast<std::size_t>(i)], i, yp[static_cast<std::size_t>(j)], j);
      for (std::size_t k = 0; k < acc.size(); ++k) acc[k] += c * term[k];
    }
  }
  for (int d = 0; d <= deg; ++d) {
    for (int j = 0; j <= d; ++j) out.set(d - j, j, acc[static_cast<std::size_t>(Polynomial2::slot(d - j, j))]);
  }
  return out;
}

double reference_triangle_integral(const Polynomial2& g) {
  // Double-double accumulation of the quotients and of their division
  // remainders, so cancellation between terms costs no digits.
  double hi = 0.0;
  double lo = 0.0;
  for (int d = 0; d <= g.degree(); ++d) {
    for (int j = 0; j <= d; ++j) {
      const int i = d - j;
      const double b = g.coeff(i, j);
      const double den = static_cast<double>((j + 1) * (i + j + 2));
      const double q = b / den;
      const double rem = std::fma(-q, den, b);  // exact: b - q * den
      const double s = hi + q;
      const double bb = s - hi;
      lo += (hi - (s - bb)) + (q - bb) + rem / den;
      hi = s;
    }
  }
  return hi + lo;
}

double signed_triangle_integral(const Polynomial2& g, Vec2 a, Vec2 b, Vec2 c) {
  // (u, v) -> a + u (b - a) + v (c - b) maps (0,0), (1,0), (1,1) to a, b, c.
  const auto phi = AffineMap2::from_columns(b - a, c - b, a);
  const double jac = phi.jacobian();
  if (jac == 0.0) return 0.0;
  return jac * reference_triangle_integral(poly_compose_affine(g, phi));
}

double triangle_integral(const Polynomial2& g, const Triangle& t) {
  return signed_triangle_integral(g, t.a(), t.b(), t.c());
}

}  // namespace conicquad
