#include "conicquad/conic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "conicquad/errors.hpp"

namespace conicquad {

namespace {

struct QuadraticParts {
  double a20, a11, a02, a10, a01, a00;
};

QuadraticParts parts(const Polynomial2& f) {
  return {f.coeff(2, 0), f.coeff(1, 1), f.coeff(0, 2), f.coeff(1, 0), f.coeff(0, 1), f.coeff(0, 0)};
}

// Quadratic part evaluated on a direction.
double quadratic_form(const QuadraticParts& q, Vec2 d) {
  return q.a20 * d.x * d.x + q.a11 * d.x * d.y + q.a02 * d.y * d.y;
}

// Symmetric bilinear form of the quadratic part.
double bilinear(const QuadraticParts& q, Vec2 u, Vec2 v) {
  return q.a20 * u.x * v.x + 0.5 * q.a11 * (u.x * v.y + u.y * v.x) + q.a02 * u.y * v.y;
}

Vec2 perp(Vec2 v) { return {-v.y, v.x}; }

// a b - c d to within a few ulps (Kahan's fma scheme).
double diff_of_products(double a, double b, double c, double d) {
  const double w = c * d;
  const double err = std::fma(-c, d, w);
  return std::fma(a, b, -w) + err;
}

struct Eigen2 {
  double lambda1;  // eigenvalue of v1, lambda1 >= lambda2
  double lambda2;
  Vec2 v1;
  Vec2 v2;  // perp(v1)
};

// [[p, q], [q, r]]
Eigen2 symmetric_eigen(double p, double q, double r) {
  const double mean = 0.5 * (p + r);
  const double rad = std::hypot(0.5 * (p - r), q);
  const double theta = 0.5 * std::atan2(2.0 * q, p - r);
  const Vec2 v1{std::cos(theta), std::sin(theta)};
  double l1 = mean + rad;
  double l2 = mean - rad;
  const double det = diff_of_products(p, r, q, q);
  // Recover the smaller-magnitude eigenvalue from the determinant.
  if (std::abs(l1) >= std::abs(l2)) {
    if (l1 != 0.0) l2 = det / l1;
  } else {
    l1 = det / l2;
  }
  return {l1, l2, v1, perp(v1)};
}

// Sign that makes the largest-magnitude coefficient positive, so f and -f
// share every frame computation.
double canonical_sign(const Polynomial2& f) {
  double best = 0.0;
  double sign = 1.0;
  for (double v : f.raw()) {
    if (std::abs(v) > best) {
      best = std::abs(v);
      sign = v > 0 ? 1.0 : -1.0;
    }
  }
  return sign;
}

double max_abs(std::initializer_list<double> vs) {
  double m = 0.0;
  for (double v : vs) m = std::max(m, std::abs(v));
  return m;
}

// Stable real roots of q2 t^2 + q1 t + q0, merged when closer than merge_eps.
// Returns (count, t1, t2, double_root).
struct Roots {
  int count = 0;
  double t[2] = {0.0, 0.0};
  bool merged = false;
};

Roots solve_quadratic(double q2, double q1, double q0, double merge_eps) {
  Roots r;
  if (q2 == 0.0) {
    if (q1 != 0.0) {
      r.count = 1;
      r.t[0] = -q0 / q1;
    }
    return r;
  }
  const double disc = q1 * q1 - 4.0 * q2 * q0;
  if (disc < 0.0) {
    // Complex pair closer than merge_eps: rounding of a tangency.
    if (-disc <= (merge_eps * q2) * (merge_eps * q2)) {
      r.count = 1;
      r.t[0] = -q1 / (2.0 * q2);
      r.merged = true;
    }
    return r;
  }
  const double sq = std::sqrt(disc);
  const double qq = -0.5 * (q1 + (q1 >= 0.0 ? sq : -sq));
  double t1 = qq / q2;
  double t2 = qq != 0.0 ? q0 / qq : t1;
  if (t1 > t2) std::swap(t1, t2);
  if (t2 - t1 <= merge_eps) {
    r.count = 1;
    r.t[0] = 0.5 * (t1 + t2);
    r.merged = true;
    return r;
  }
  r.count = 2;
  r.t[0] = t1;
  r.t[1] = t2;
  return r;
}

}  // namespace

std::string_view to_string(ConicClass c) {
  switch (c) {
    case ConicClass::Ellipse: return "Ellipse";
    case ConicClass::Parabola: return "Parabola";
    case ConicClass::Hyperbola: return "Hyperbola";
    case ConicClass::CrossingLines: return "CrossingLines";
    case ConicClass::ParallelLines: return "ParallelLines";
    case ConicClass::DoubleLine: return "DoubleLine";
    case ConicClass::SingleLine: return "SingleLine";
    case ConicClass::Point: return "Point";
    case ConicClass::Empty: return "Empty";
    case ConicClass::ConstantSign: return "ConstantSign";
  }
  return "?";
}

bool is_nondegenerate(ConicClass c) {
  return c == ConicClass::Ellipse || c == ConicClass::Parabola || c == ConicClass::Hyperbola;
}

Conic::Conic(const Polynomial2& f, const Tolerances& tol) : f_(f.with_cap(2)), tol_(tol) {
  const double sign = canonical_sign(f_);
  const auto q = parts(f_ * sign);
  const double eps = tol.classify;

  const double s_all = max_abs({q.a20, q.a11, q.a02, q.a10, q.a01, q.a00});
  const double s2 = max_abs({q.a20, q.a11, q.a02});
  const double s1 = max_abs({q.a10, q.a01});

  // Margin: factor by which the nearest deciding invariant clears its threshold.
  margin_ = std::numeric_limits<double>::infinity();
  const auto above = [&](double normalized) { margin_ = std::min(margin_, std::abs(normalized) / eps); };
  const auto below = [&](double normalized) {
    if (normalized != 0.0) margin_ = std::min(margin_, eps / std::abs(normalized));
  };

  if (s_all == 0.0) {
    type_ = ConicClass::ConstantSign;
    has_frame_ = true;
    factor_ = 0.0;
    return;
  }

  if (s2 <= eps * s_all) {
    below(s2 / s_all);
    if (s1 <= eps * s_all) {
      below(s1 / s_all);
      type_ = ConicClass::ConstantSign;
      has_frame_ = true;
      factor_ = f_.coeff(0, 0);
      return;
    }
    above(s1 / s_all);
    type_ = ConicClass::SingleLine;
    const double len = std::hypot(q.a10, q.a01);
    const Vec2 n{q.a10 / len, q.a01 / len};
    // x = n.X + a00/len, y = perp(n).X
    to_std_ = AffineMap2({n.x, n.y, -n.y, n.x}, {q.a00 / len, 0.0});
    from_std_ = to_std_.inverse();
    factor_ = sign * len;
    has_frame_ = true;
    return;
  }

  const double half_b = 0.5 * q.a11;
  const double det_n = diff_of_products(q.a20, q.a02, half_b, half_b) / (s2 * s2);
  const auto eig = symmetric_eigen(q.a20, 0.5 * q.a11, q.a02);
  const Vec2 ell{q.a10, q.a01};

  if (std::abs(det_n) <= eps) {
    below(det_n);
    // Parabolic type: one vanishing eigenvalue.
    const bool first = std::abs(eig.lambda1) >= std::abs(eig.lambda2);
    const double lam = first ? eig.lambda1 : eig.lambda2;
    const Vec2 n = first ? eig.v1 : eig.v2;
    const Vec2 e = perp(n);
    const double ln = dot(ell, n);
    const double le = dot(ell, e);

    if (std::abs(le) > eps * s_all) {
      above(le / s_all);
      type_ = ConicClass::Parabola;
      // f = lam x'^2 + le y_raw with x' = n.X + ln/(2 lam).
      const double x_off = ln / (2.0 * lam);
      const double y_off = (q.a00 - ln * ln / (4.0 * lam)) / le;
      double c = -lam / le;
      double flip = 1.0;
      double fac = le;
      if (c < 0.0) {
        c = -c;
        flip = -1.0;
        fac = -le;
      }
      // Flip both axes together to keep a proper rotation.
      to_std_ = AffineMap2({flip * n.x, flip * n.y, flip * e.x, flip * e.y}, {flip * x_off, flip * y_off});
      from_std_ = to_std_.inverse();
      params_.c = c;
      params_.center = from_std_({0.0, 0.0});
      factor_ = sign * fac;
      has_frame_ = true;
      return;
    }
    below(le / s_all);

    // f depends on s = n.X only: lam s^2 + ln s + a00.
    const double disc = ln * ln - 4.0 * lam * q.a00;
    // Rounding in a00 scales with the largest coefficient, not with a00 itself.
    const double disc_scale = ln * ln + 4.0 * std::abs(lam) * s_all;
    const double disc_n = disc_scale > 0.0 ? disc / disc_scale : 0.0;
    const AffineMap2 rot({n.x, n.y, e.x, e.y}, {});
    if (std::abs(disc_n) <= eps) {
      below(disc_n);
      type_ = ConicClass::DoubleLine;
      const double s0 = -ln / (2.0 * lam);
      to_std_ = AffineMap2(rot.linear(), {-s0, 0.0});
      from_std_ = to_std_.inverse();
      factor_ = sign * lam;
      has_frame_ = true;
      return;
    }
    above(disc_n);
    if (disc < 0.0) {
      type_ = ConicClass::Empty;
      factor_ = sign * lam;
      return;
    }
    type_ = ConicClass::ParallelLines;
    const double sq = std::sqrt(disc);
    const double qq = -0.5 * (ln + (ln >= 0.0 ? sq : -sq));
    double r1 = qq / lam;
    double r2 = qq != 0.0 ? q.a00 / qq : -r1;
    if (r1 > r2) std::swap(r1, r2);
    to_std_ = AffineMap2(rot.linear(), {-r1, 0.0});
    from_std_ = to_std_.inverse();
    params_.d = r2 - r1;
    factor_ = sign * lam;
    has_frame_ = true;
    return;
  }

  // Central conic: center X0 = -A^{-1} ell / 2.
  const double det = diff_of_products(q.a20, q.a02, half_b, half_b);
  const Vec2 x0{-diff_of_products(q.a02, q.a10, half_b, q.a01) / (2.0 * det),
                -diff_of_products(q.a20, q.a01, half_b, q.a10) / (2.0 * det)};
  // f is stationary at the center, so evaluating it there is insensitive to
  // rounding in x0, unlike the closed form a00 + ell.x0 / 2.
  const double fc = sign * poly_eval(f_, x0);
  const double fc_scale = std::abs(q.a00) + 0.5 * std::abs(dot(ell, x0));
  const double fc_n = fc_scale > 0.0 ? fc / fc_scale : 0.0;
  above(det_n);
  params_.center = x0;

  const bool degenerate = std::abs(fc_n) <= eps;
  if (!degenerate) above(fc_n);

  if (det > 0.0) {
    if (degenerate) {
      below(fc_n);
      type_ = ConicClass::Point;
      factor_ = sign * eig.lambda1;
      return;
    }
    if ((fc > 0.0) == (eig.lambda1 > 0.0)) {
      type_ = ConicClass::Empty;
      factor_ = sign * eig.lambda1;
      return;
    }
    type_ = ConicClass::Ellipse;
    // Major axis along the eigenvector with the smaller |eigenvalue|.
    const bool first_major = std::abs(eig.lambda1) <= std::abs(eig.lambda2);
    const double lx = first_major ? eig.lambda1 : eig.lambda2;
    const double ly = first_major ? eig.lambda2 : eig.lambda1;
    const Vec2 ax = first_major ? eig.v1 : eig.v2;
    const Vec2 ay = perp(ax);
    const double mu = -fc;
    params_.a = std::sqrt(mu / lx);
    params_.b = std::sqrt(mu / ly);
    to_std_ = AffineMap2({ax.x, ax.y, ay.x, ay.y}, {-dot(ax, x0), -dot(ay, x0)});
    from_std_ = to_std_.inverse();
    factor_ = sign * mu;
    has_frame_ = true;
    return;
  }

  // Hyperbola or crossing lines: oblique frame along the null directions.
  const double l_pos = std::max(eig.lambda1, eig.lambda2);
  const double l_neg = std::min(eig.lambda1, eig.lambda2);
  const Vec2 v_pos = eig.lambda1 >= eig.lambda2 ? eig.v1 : eig.v2;
  Vec2 v_neg = perp(v_pos);
  const double sp = std::sqrt(-l_neg);
  const double sn = std::sqrt(l_pos);
  Vec2 d1 = v_pos * sp - v_neg * sn;
  Vec2 d2 = v_pos * sp + v_neg * sn;
  d1 = d1 / norm(d1);
  d2 = d2 / norm(d2);
  if (cross(d1, d2) < 0.0) std::swap(d1, d2);
  const double two_b = 2.0 * bilinear(q, d1, d2);
  from_std_ = AffineMap2::from_columns(d1, d2, x0);
  to_std_ = from_std_.inverse();
  params_.dir1 = d1;
  params_.dir2 = d2;
  factor_ = sign * two_b;
  has_frame_ = true;
  if (degenerate) {
    below(fc_n);
    type_ = ConicClass::CrossingLines;
    params_.k = 0.0;
  } else {
    type_ = ConicClass::Hyperbola;
    params_.k = -fc / two_b;
  }
}

Polynomial2 Conic::standard_form() const {
  const auto& p = params_;
  switch (type_) {
    case ConicClass::Ellipse:
      return Polynomial2::quadratic(1.0 / (p.a * p.a), 0.0, 1.0 / (p.b * p.b), 0.0, 0.0, -1.0);
    case ConicClass::Parabola: return Polynomial2::quadratic(-p.c, 0.0, 0.0, 0.0, 1.0, 0.0);
    case ConicClass::Hyperbola: return Polynomial2::quadratic(0.0, 1.0, 0.0, 0.0, 0.0, -p.k);
    case ConicClass::CrossingLines: return Polynomial2::quadratic(0.0, 1.0, 0.0, 0.0, 0.0, 0.0);
    case ConicClass::ParallelLines: return Polynomial2::quadratic(1.0, 0.0, 0.0, -p.d, 0.0, 0.0);
    case ConicClass::DoubleLine: return Polynomial2::quadratic(1.0, 0.0, 0.0, 0.0, 0.0, 0.0);
    case ConicClass::SingleLine: return Polynomial2::quadratic(0.0, 0.0, 0.0, 1.0, 0.0, 0.0);
    case ConicClass::ConstantSign: return Polynomial2::quadratic(0.0, 0.0, 0.0, 0.0, 0.0, 1.0);
    case ConicClass::Point:
    case ConicClass::Empty: break;
  }
  throw InvalidArgument("conic class has no standard form");
}

int Conic::branch_of(Vec2 world) const {
  if (type_ != ConicClass::Hyperbola) return 0;
  return to_std_(world).x >= 0.0 ? 1 : -1;
}

ConicClass conic_classify(const Polynomial2& f, const Tolerances& tol) { return Conic(f, tol).type(); }

Conic normalize_conic(const Polynomial2& f, const Tolerances& tol) {
  if (f.is_zero()) throw InvalidArgument("cannot normalize the zero polynomial");
  return Conic(f, tol);
}

bool on_conic(const Polynomial2& f, Vec2 p, const Tolerances& tol) {
  return std::abs(poly_eval(f, p)) <= tol.on_conic * term_magnitude(f, p);
}

std::vector<SegmentHit> segment_hits(const Polynomial2& f, const Segment& seg, bool start_on, bool end_on,
                                     const Tolerances& tol) {
  const auto q = parts(f);
  const Vec2 d = seg.b - seg.a;
  const double eps = tol.segment_param;
  const double q2 = quadratic_form(q, d);

  Roots roots;
  if (start_on && end_on) {
    roots.count = 2;
    roots.t[0] = 0.0;
    roots.t[1] = 1.0;
  } else if (start_on) {
    roots = solve_quadratic(q2, dot(gradient(f, seg.a), d), 0.0, eps);
  } else if (end_on) {
    // s = 1 - t measured from the end point.
    roots = solve_quadratic(q2, -dot(gradient(f, seg.b), d), 0.0, eps);
    for (int k = 0; k < roots.count; ++k) roots.t[k] = 1.0 - roots.t[k];
    if (roots.count == 2 && roots.t[0] > roots.t[1]) std::swap(roots.t[0], roots.t[1]);
  } else {
    roots = solve_quadratic(q2, dot(gradient(f, seg.a), d), poly_eval(f, seg.a), eps);
  }

  std::vector<SegmentHit> hits;
  for (int k = 0; k < roots.count; ++k) {
    double t = roots.t[k];
    if (!(t >= -eps && t <= 1.0 + eps)) continue;
    SegmentHit h;
    h.multiplicity = roots.merged ? 2 : 1;
    if (t <= eps) {
      t = 0.0;
      h.at_vertex = true;
      h.point = seg.a;
    } else if (t >= 1.0 - eps) {
      t = 1.0;
      h.at_vertex = true;
      h.point = seg.b;
    } else {
      h.point = seg.at(t);
    }
    h.param = t;
    // Two roots snapped onto the same endpoint collapse into one double hit.
    if (!hits.empty() && hits.back().param == t) {
      hits.back().multiplicity = 2;
      continue;
    }
    hits.push_back(h);
  }
  return hits;
}

std::vector<SegmentHit> conic_segment_intersections(const Conic& c, const Segment& seg) {
  const auto& tol = c.tolerances();
  if (seg.a == seg.b) throw InvalidArgument("segment endpoints coincide");
  bool start_on = on_conic(c.f(), seg.a, tol);
  bool end_on = on_conic(c.f(), seg.b, tol);
  auto hits = segment_hits(c.f(), seg, start_on, end_on, tol);
  // A root snapped onto an unflagged endpoint: redo with it deflated.
  bool changed = false;
  for (const auto& h : hits) {
    if (h.at_vertex && h.param == 0.0 && !start_on) start_on = changed = true;
    if (h.at_vertex && h.param == 1.0 && !end_on) end_on = changed = true;
  }
  if (changed) hits = segment_hits(c.f(), seg, start_on, end_on, tol);
  return hits;
}

bool segment_is_free(const Conic& c, const Segment& seg) {
  const auto hits = conic_segment_intersections(c, seg);
  return std::all_of(hits.begin(), hits.end(), [](const SegmentHit& h) { return h.at_vertex; });
}

std::vector<Vec2> line_intersections(const Polynomial2& f, Vec2 p, Vec2 dir) {
  const auto q = parts(f);
  const double q2 = quadratic_form(q, dir);
  const double q1 = dot(gradient(f, p), dir);
  const double q0 = poly_eval(f, p);
  const auto roots = solve_quadratic(q2, q1, q0, 0.0);
  std::vector<Vec2> out;
  for (int k = 0; k < roots.count; ++k) out.push_back(p + dir * roots.t[k]);
  return out;
}

std::vector<Vec2> tangency_interior_points(const Conic& c, Vec2 branch_hint, Vec2 b, Vec2 cpt) {
  if (!is_nondegenerate(c.type())) throw InvalidArgument("tangency points need a nondegenerate conic");
  const auto q = parts(c.f());

  // Line n.X + off = 0, intersected with the conic.
  const auto on_line = [&](Vec2 n, double off) {
    const double nn = dot(n, n);
    if (nn == 0.0) return std::vector<Vec2>{};
    return line_intersections(c.f(), n * (-off / nn), perp(n));
  };

  std::vector<Vec2> raw;
  // Tangent parallel to w: grad f(P) . w = 0, i.e. (2 A w).P + ell.w = 0.
  const Vec2 w = cpt - b;
  const Vec2 two_aw{2.0 * q.a20 * w.x + q.a11 * w.y, q.a11 * w.x + 2.0 * q.a02 * w.y};
  for (Vec2 p : on_line(two_aw, q.a10 * w.x + q.a01 * w.y)) raw.push_back(p);
  // Polar of a pole: M [pole; 1].
  for (Vec2 pole : {b, cpt}) {
    const Vec2 n{q.a20 * pole.x + 0.5 * q.a11 * pole.y + 0.5 * q.a10,
                 0.5 * q.a11 * pole.x + q.a02 * pole.y + 0.5 * q.a01};
    const double off = 0.5 * q.a10 * pole.x + 0.5 * q.a01 * pole.y + q.a00;
    for (Vec2 p : on_line(n, off)) raw.push_back(p);
  }

  std::vector<Vec2> out;
  const int branch = c.branch_of(branch_hint);
  for (Vec2 p : raw) {
    if (!std::isfinite(p.x) || !std::isfinite(p.y)) continue;
    if (branch != 0 && c.branch_of(p) != branch) continue;
    out.push_back(p);
  }
  if (out.empty()) throw NoTangencyCandidate("no tangency point on the required branch");
  return out;
}

}  // namespace conicquad
