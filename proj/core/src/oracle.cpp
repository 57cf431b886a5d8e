#include "conicquad/oracle.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <queue>
#include <vector>

#include "conicquad/errors.hpp"

namespace conicquad {

namespace {

constexpr int kMaxDepth = 40;

struct Cell {
  std::array<Vec2, 3> v;
  int depth = 0;
  double value = 0.0;
  double bound = 0.0;
};

struct ByBound {
  bool operator()(const Cell& a, const Cell& b) const { return a.bound < b.bound; }
};

// Orientation-independent integral over the triangle a, b, c.
double integrate_cell(const Polynomial2& g, Vec2 a, Vec2 b, Vec2 c) {
  const double s = signed_triangle_integral(g, a, b, c);
  return cross(b - a, c - a) < 0.0 ? -s : s;
}

class Oracle {
 public:
  Oracle(const Polynomial2& g, const Polynomial2& f) : g_(g), f_(f) {
    const double a = f.coeff(2, 0);
    const double b = 0.5 * f.coeff(1, 1);
    const double c = f.coeff(0, 2);
    det_ = a * c - b * b;
    const double mean = 0.5 * (a + c);
    const double rad = std::hypot(0.5 * (a - c), b);
    lambda_max_ = mean + rad;
    lambda_min_ = mean - rad;
    const double theta = 0.5 * std::atan2(2.0 * b, a - c);
    v_max_ = {std::cos(theta), std::sin(theta)};
  }

  // Exact range of f over the closed triangle.
  std::pair<double, double> range(const std::array<Vec2, 3>& v) const {
    double lo = poly_eval(f_, v[0]);
    double hi = lo;
    const auto take = [&](double x) {
      lo = std::min(lo, x);
      hi = std::max(hi, x);
    };
    take(poly_eval(f_, v[1]));
    take(poly_eval(f_, v[2]));
    for (int i = 0; i < 3; ++i) {
      const Vec2 p = v[static_cast<std::size_t>(i)];
      const Vec2 d = v[static_cast<std::size_t>((i + 1) % 3)] - p;
      const double q2 = f_.coeff(2, 0) * d.x * d.x + f_.coeff(1, 1) * d.x * d.y + f_.coeff(0, 2) * d.y * d.y;
      if (q2 == 0.0) continue;
      const double s = -dot(gradient(f_, p), d) / (2.0 * q2);
      if (s > 0.0 && s < 1.0) take(poly_eval(f_, p + d * s));
    }
    if (det_ != 0.0) {
      // 2 A x + l = 0
      const double a = f_.coeff(2, 0);
      const double b = 0.5 * f_.coeff(1, 1);
      const double c = f_.coeff(0, 2);
      const double l1 = f_.coeff(1, 0);
      const double l2 = f_.coeff(0, 1);
      const Vec2 x{-(c * l1 - b * l2) / (2.0 * det_), -(a * l2 - b * l1) / (2.0 * det_)};
      const Vec2 e1 = v[1] - v[0];
      const Vec2 e2 = v[2] - v[0];
      const double den = cross(e1, e2);
      const double al = cross(x - v[0], e2) / den;
      const double be = cross(e1, x - v[0]) / den;
      if (al > 0.0 && be > 0.0 && al + be < 1.0) take(poly_eval(f_, x));
    }
    return {lo, hi};
  }

  // Bound on |g| over the cell: the smaller of the coefficient norm over the
  // bounding box and the same norm for g re-expanded about the centroid.
  double g_bound(const std::array<Vec2, 3>& v, Vec2 m) const {
    double mx = 0.0, my = 0.0, rx = 0.0, ry = 0.0;
    for (const auto& p : v) {
      mx = std::max(mx, std::abs(p.x));
      my = std::max(my, std::abs(p.y));
      rx = std::max(rx, std::abs(p.x - m.x));
      ry = std::max(ry, std::abs(p.y - m.y));
    }
    return std::min(coefficient_norm(g_, mx, my),
                    coefficient_norm(poly_compose_affine(g_, AffineMap2::translation(m)), rx, ry));
  }

  // sum |b_ij| x^i y^j
  static double coefficient_norm(const Polynomial2& p, double x, double y) {
    double sum = 0.0;
    double px = 1.0;
    for (int i = 0; i <= 4; ++i, px *= x) {
      double py = px;
      for (int j = 0; i + j <= 4; ++j, py *= y) sum += std::abs(p.coeff(i, j)) * py;
    }
    return sum;
  }

  Cell evaluate(const std::array<Vec2, 3>& v, int depth) const {
    Cell cell{v, depth, 0.0, 0.0};
    const auto [lo, hi] = range(v);
    if (lo >= 0.0) {
      cell.value = integrate_cell(g_, v[0], v[1], v[2]);
      return cell;
    }
    if (hi <= 0.0) return cell;

    const Vec2 m = (v[0] + v[1] + v[2]) / 3.0;
    const double area = 0.5 * std::abs(cross(v[1] - v[0], v[2] - v[0]));
    const double gb = g_bound(v, m);

    // Along a line with unit direction e, f = lambda t^2 + (linear). If
    // lambda > 0, the part of a chord where lo <= f < 0 is at most
    // 2 sqrt(-lo / lambda) long, so {f < 0} covers at most that times the
    // cell's width across e; likewise {f > 0} when lambda < 0. This settles
    // cells where f only grazes zero, which the linear model below cannot.
    const auto width_across = [&](Vec2 e) {
      const Vec2 n{-e.y, e.x};
      double lo_n = INFINITY, hi_n = -INFINITY;
      for (const auto& p : v) {
        lo_n = std::min(lo_n, dot(n, p));
        hi_n = std::max(hi_n, dot(n, p));
      }
      return hi_n - lo_n;
    };
    double graze_full = INFINITY;   // bound when taking the whole cell
    double graze_empty = INFINITY;  // bound when taking none of it
    if (lambda_max_ > 0.0) graze_full = 2.0 * std::sqrt(-lo / lambda_max_) * width_across(v_max_);
    if (lambda_min_ < 0.0) graze_empty = 2.0 * std::sqrt(hi / -lambda_min_) * width_across({-v_max_.y, v_max_.x});

    // Expand f about x0, the foot of the centroid on its own linearization;
    // f(x0 + p) = f0 + g0 . p + p^T A p holds exactly.
    Vec2 x0 = m;
    const double fm = poly_eval(f_, m);
    const Vec2 gm = gradient(f_, m);
    const double gm2 = dot(gm, gm);
    if (gm2 > 0.0) x0 = m - gm * (fm / gm2);
    double f0 = poly_eval(f_, x0);
    Vec2 g0 = gradient(f_, x0);
    if (!(dot(g0, g0) > 0.0) || !std::isfinite(f0)) {
      x0 = m;
      f0 = fm;
      g0 = gm;
    }

    // Part of the cell where the linear model is nonnegative.
    std::array<Vec2, 4> poly;  // a triangle clipped by a half-plane has at most 4 corners
    std::size_t n = 0;
    for (int i = 0; i < 3; ++i) {
      const Vec2 a = v[static_cast<std::size_t>(i)];
      const Vec2 b = v[static_cast<std::size_t>((i + 1) % 3)];
      const double la = f0 + dot(g0, a - x0);
      const double lb = f0 + dot(g0, b - x0);
      if (la >= 0.0) poly[n++] = a;
      if ((la > 0.0 && lb < 0.0) || (la < 0.0 && lb > 0.0)) poly[n++] = lerp(a, b, la / (la - lb));
    }
    for (std::size_t k = 1; k + 1 < n; ++k) cell.value += integrate_cell(g_, poly[0], poly[k], poly[k + 1]);

    // Where the signs of f and of the model differ, |f0 + g0.p| <= |p^T A p|.
    // In coordinates s along the model's zero line and t along g0, about x0,
    // that reads |t - t0| |g0| <= |A_ss s^2 + 2 A_st s t + A_tt t^2|: a strip
    // whose half-width w(s) is quadratic in s once |t| <= T is known.
    double mismatch = area;
    const double gn = norm(g0);
    if (gn > 0.0) {
      const Vec2 nrm = g0 / gn;
      const Vec2 tan{-nrm.y, nrm.x};
      const auto form = [&](Vec2 a, Vec2 b) {
        return f_.coeff(2, 0) * a.x * b.x + 0.5 * f_.coeff(1, 1) * (a.x * b.y + a.y * b.x) + f_.coeff(0, 2) * a.y * b.y;
      };
      const double ass = std::abs(form(tan, tan)) / gn;
      const double ast = std::abs(form(tan, nrm)) / gn;
      const double att = std::abs(form(nrm, nrm)) / gn;
      const double t0 = std::abs(f0) / gn;
      double smin = INFINITY, smax = -INFINITY, big_t = 0.0;
      for (const auto& p : v) {
        const double sp = dot(tan, p - x0);
        smin = std::min(smin, sp);
        smax = std::max(smax, sp);
        big_t = std::max(big_t, std::abs(dot(nrm, p - x0)));
      }
      const double smax_abs = std::max(std::abs(smin), std::abs(smax));
      for (int pass = 0; pass < 2; ++pass)
        big_t = std::min(big_t, t0 + ass * smax_abs * smax_abs + 2.0 * ast * smax_abs * big_t + att * big_t * big_t);
      const auto cube = [](double x) { return x * x * x; };
      const auto half_abs_sq = [](double x) { return 0.5 * x * std::abs(x); };  // antiderivative of |s|
      const double strip = 2.0 * (ass * (cube(smax) - cube(smin)) / 3.0 +
                                  2.0 * ast * big_t * (half_abs_sq(smax) - half_abs_sq(smin)) +
                                  att * big_t * big_t * (smax - smin));
      mismatch = std::min(area, strip);
    }
    if (std::min(graze_full, graze_empty) < mismatch) {
      const bool full = graze_full <= graze_empty;
      cell.value = full ? integrate_cell(g_, v[0], v[1], v[2]) : 0.0;
      mismatch = full ? graze_full : graze_empty;
    }
    cell.bound = gb * mismatch;
    return cell;
  }

 private:
  const Polynomial2& g_;
  const Polynomial2& f_;
  double det_ = 0.0;
  // Eigenvalues of the quadratic part; v_max_ is the unit eigenvector of lambda_max_.
  double lambda_max_ = 0.0;
  double lambda_min_ = 0.0;
  Vec2 v_max_{1.0, 0.0};
};

}  // namespace

OracleEstimate oracle_integrate(const Polynomial2& g, const Polynomial2& f, const Triangle& t, double tol) {
  if (!(tol > 0.0)) throw InvalidArgument("oracle: tol must be positive");
  if (f.degree() > 2) throw DegreeOverflow("oracle: f must have degree <= 2");
  const Oracle oracle(g, f);

  double settled = 0.0;  // resolved cells
  std::size_t settled_cells = 0;
  std::priority_queue<Cell, std::vector<Cell>, ByBound> open;
  std::vector<Cell> capped;
  double open_bound = 0.0;

  const auto admit = [&](Cell c) {
    if (c.bound == 0.0) {
      settled += c.value;
      ++settled_cells;
    } else if (c.depth >= kMaxDepth) {
      capped.push_back(c);
    } else {
      open_bound += c.bound;
      open.push(c);
    }
  };
  admit(oracle.evaluate(t.vertices(), 0));

  double capped_bound = 0.0;
  while (!open.empty() && open_bound + capped_bound > tol) {
    const Cell c = open.top();
    open.pop();
    open_bound -= c.bound;
    // Longest-edge bisection.
    int k = 0;
    double best = -1.0;
    for (int i = 0; i < 3; ++i) {
      const double len = norm(c.v[static_cast<std::size_t>((i + 1) % 3)] - c.v[static_cast<std::size_t>(i)]);
      if (len > best) {
        best = len;
        k = i;
      }
    }
    const Vec2 a = c.v[static_cast<std::size_t>(k)];
    const Vec2 b = c.v[static_cast<std::size_t>((k + 1) % 3)];
    const Vec2 o = c.v[static_cast<std::size_t>((k + 2) % 3)];
    const Vec2 mid = midpoint(a, b);
    const std::size_t before = capped.size();
    admit(oracle.evaluate({a, mid, o}, c.depth + 1));
    admit(oracle.evaluate({mid, b, o}, c.depth + 1));
    for (std::size_t i = before; i < capped.size(); ++i) capped_bound += capped[i].bound;
    if (open.empty()) open_bound = 0.0;
  }

  OracleEstimate est;
  est.value = settled;
  est.error_bound = 0.0;
  est.cells_used = settled_cells + open.size() + capped.size();
  while (!open.empty()) {
    est.value += open.top().value;
    est.error_bound += open.top().bound;
    open.pop();
  }
  for (const auto& c : capped) {
    est.value += c.value;
    est.error_bound += c.bound;
  }
  return est;
}

}  // namespace conicquad
