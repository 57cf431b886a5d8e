#include "conicquad/basecase.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "conicquad/debug.hpp"
#include "conicquad/errors.hpp"
#include "probe.hpp"

namespace conicquad {

namespace {

constexpr int kTrigOrder = 6;
constexpr double kPi = std::numbers::pi;

std::atomic<int> g_corruption{0};

// cos^i sin^j = sum_m alpha[m] cos(m t) + beta[m] sin(m t).
struct Linearization {
  std::array<double, kTrigOrder + 1> alpha{};
  std::array<double, kTrigOrder + 1> beta{};
};

using TrigTable = std::array<std::array<Linearization, kTrigOrder + 1>, kTrigOrder + 1>;

// Laurent polynomial in z = e^{it}, coefficient of z^m at index m + kTrigOrder.
using Laurent = std::array<std::complex<double>, 2 * kTrigOrder + 1>;

Laurent laurent_mul(const Laurent& p, std::complex<double> lo, std::complex<double> hi) {
  // p * (lo / z + hi z)
  Laurent out{};
  for (int m = 0; m <= 2 * kTrigOrder; ++m) {
    if (p[static_cast<std::size_t>(m)] == 0.0) continue;
    if (m > 0) out[static_cast<std::size_t>(m - 1)] += p[static_cast<std::size_t>(m)] * lo;
    if (m < 2 * kTrigOrder) out[static_cast<std::size_t>(m + 1)] += p[static_cast<std::size_t>(m)] * hi;
  }
  return out;
}

TrigTable build_table() {
  using C = std::complex<double>;
  TrigTable table{};
  for (int i = 0; i <= kTrigOrder; ++i) {
    for (int j = 0; i + j <= kTrigOrder; ++j) {
      Laurent p{};
      p[kTrigOrder] = 1.0;
      // cos = (z + 1/z) / 2, sin = (z - 1/z) / (2i)
      for (int k = 0; k < i; ++k) p = laurent_mul(p, C(0.5, 0.0), C(0.5, 0.0));
      for (int k = 0; k < j; ++k) p = laurent_mul(p, C(0.0, 0.5), C(0.0, -0.5));
      auto& lin = table[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
      lin.alpha[0] = p[kTrigOrder].real();
      for (int m = 1; m <= kTrigOrder; ++m) {
        const C cm = p[static_cast<std::size_t>(kTrigOrder + m)];
        lin.alpha[static_cast<std::size_t>(m)] = 2.0 * cm.real();
        lin.beta[static_cast<std::size_t>(m)] = -2.0 * cm.imag();
      }
    }
  }
  return table;
}

const TrigTable& trig_table() {
  static const TrigTable table = build_table();
  return table;
}

Linearization lookup(int i, int j) {
  if (i < 0 || j < 0 || i + j > kTrigOrder) throw InvalidArgument("trig order out of range");
  Linearization lin = trig_table()[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
  if (g_corruption.load(std::memory_order_relaxed) > 0) {
    for (auto& a : lin.alpha) a *= 1.01;
    lin.alpha[0] += 0.01;
  }
  return lin;
}

double binomial(int n, int k) {
  double r = 1.0;
  for (int q = 1; q <= k; ++q) r = r * (n - k + q) / q;
  return r;
}

// Integral over the elliptic sector r <= 1, t in [t1, t2] of x = a r cos t, y = b r sin t.
double ellipse_sector(const Polynomial2& g, double a, double b, double t1, double t2) {
  double sum = 0.0;
  for (int n = 0; n <= 4; ++n) {
    for (int j = 0; j <= n; ++j) {
      const int i = n - j;
      const double coeff = g.coeff(i, j);
      if (coeff == 0.0) continue;
      sum += coeff * std::pow(a, i + 1) * std::pow(b, j + 1) * trig_partial(i, j, t1, t2) / (n + 2);
    }
  }
  return sum;
}

struct Rule {
  std::vector<double> node;  // on [0, 1]
  std::vector<double> weight;
};

// Gauss-Legendre on [0, 1] by Newton iteration on P_n.
Rule gauss_legendre(int n) {
  Rule r;
  r.node.resize(static_cast<std::size_t>(n));
  r.weight.resize(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    double x = std::cos(kPi * (k + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0;
      double p1 = x;
      for (int m = 2; m <= n; ++m) {
        const double p2 = ((2 * m - 1) * x * p1 - (m - 1) * p0) / m;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-17) break;
    }
    r.node[static_cast<std::size_t>(k)] = 0.5 * (1.0 - x);
    r.weight[static_cast<std::size_t>(k)] = 1.0 / ((1.0 - x * x) * dp * dp);
  }
  return r;
}

// Exact for polynomials of degree <= 5.
const Rule& rule3() {
  static const Rule r = gauss_legendre(3);
  return r;
}
// Exact for polynomials of degree <= 11.
const Rule& rule6() {
  static const Rule r = gauss_legendre(6);
  return r;
}
// Analytic integrands whose singularities stay well away from [0, 1].
const Rule& rule24() {
  static const Rule r = gauss_legendre(24);
  return r;
}

// Chords this short relative to their distance from the conic center are
// integrated by quadrature in world coordinates.
constexpr double kThinHalfAngle = 1.0;
constexpr double kFarRatio = 4.0;

// Integral of (t (1 - t))^p (1 + rho t)^n over [0, 1], rho >= 0.
double beta_moment(int p, int n, double rho) {
  // B(p + 1, p + 1)
  double b0 = 1.0;
  for (int q = 1; q <= p; ++q) b0 *= static_cast<double>(q) / (p + q);
  b0 /= 2 * p + 1;

  if (n >= 0) {
    double sum = 0.0;
    double term = b0;  // C(n, q) rho^q B(p + q + 1, p + 1)
    for (int q = 0; q <= n; ++q) {
      sum += term;
      term *= rho * (n - q) / (q + 1) * (p + q + 1) / (2.0 * p + q + 2);
    }
    return sum;
  }

  const int big_n = -n;
  if (rho <= 19.0) {
    // Expand from the far end: every term is positive.
    const double sigma = rho / (1.0 + rho);
    double sum = 0.0;
    double term = b0;
    for (int q = 0; q < 20000; ++q) {
      sum += term;
      term *= sigma * (big_n + q) / (q + 1) * (p + q + 1) / (2.0 * p + q + 2);
      if (term <= 1e-18 * sum) break;
    }
    return sum * std::pow(1.0 + rho, n);
  }

  // z = 1 + rho t: rho^{-(2p+1)} int_1^{1+rho} (z-1)^p (1+rho-z)^p z^{-N} dz.
  std::array<double, 11> q{};
  q[0] = 1.0;
  int deg = 0;
  for (int k = 0; k < p; ++k) {
    // * (z - 1)(1 + rho - z) = -z^2 + (2 + rho) z - (1 + rho)
    std::array<double, 11> next{};
    for (int m = 0; m <= deg; ++m) {
      next[static_cast<std::size_t>(m + 2)] -= q[static_cast<std::size_t>(m)];
      next[static_cast<std::size_t>(m + 1)] += (2.0 + rho) * q[static_cast<std::size_t>(m)];
      next[static_cast<std::size_t>(m)] -= (1.0 + rho) * q[static_cast<std::size_t>(m)];
    }
    q = next;
    deg += 2;
  }
  const double lz = std::log1p(rho);
  double sum = 0.0;
  for (int m = 0; m <= deg; ++m) {
    const int e = m - big_n + 1;
    const double seg = e == 0 ? lz : std::expm1(e * lz) / e;
    sum += q[static_cast<std::size_t>(m)] * seg;
  }
  return sum / std::pow(rho, 2 * p + 1);
}


// Elliptic-polar moments of the whole ellipse.
double ellipse_full(const Polynomial2& gs, double a, double b) {
  double sum = 0.0;
  for (int n = 0; n <= 4; ++n) {
    for (int j = 0; j <= n; ++j) {
      const double coeff = gs.coeff(n - j, j);
      if (coeff == 0.0) continue;
      sum += coeff * std::pow(a, n - j + 1) * std::pow(b, j + 1) * trig_moment(n - j, j) / (n + 2);
    }
  }
  return sum;
}

// eval(p) is g at standard point p; gs is the same function as a polynomial
// in standard coordinates, used only where its expansion is well conditioned.
template <class Eval>
double ellipse_segment_impl(const Polynomial2& gs, const Eval& eval, double a, double b, Vec2 p1, Vec2 p2) {
  if (p1 == p2) throw InvalidArgument("ellipse segment: chord endpoints coincide");
  const double t1 = std::atan2(p1.y / b, p1.x / a);
  double span = std::atan2(p2.y / b, p2.x / a) - t1;
  if (span <= 0.0) span += 2.0 * kPi;
  if (span > kPi) return ellipse_full(gs, a, b) - ellipse_segment_impl(gs, eval, a, b, p2, p1);

  const double h = 0.5 * span;
  if (h > kThinHalfAngle) return ellipse_sector(gs, a, b, t1, t1 + span) - signed_triangle_integral(gs, {0.0, 0.0}, p1, p2);

  // Unit-circle frame with xi toward the arc midpoint: the region is
  // xi in [cos h, cos psi], eta = sin psi, psi in [-h, h].
  const double mid = t1 + h;
  const Vec2 e{std::cos(mid), std::sin(mid)};
  const Vec2 en{-e.y, e.x};
  const double ch = std::cos(h);
  const auto& outer = rule24();
  const auto& inner = rule3();
  double sum = 0.0;
  for (std::size_t k = 0; k < outer.node.size(); ++k) {
    const double psi = h * (2.0 * outer.node[k] - 1.0);
    const double cp = std::cos(psi);
    const double sp = std::sin(psi);
    const double width = 2.0 * std::sin(0.5 * (h + psi)) * std::sin(0.5 * (h - psi));
    double line = 0.0;
    for (std::size_t m = 0; m < inner.node.size(); ++m) {
      const double xi = ch + inner.node[m] * width;
      const Vec2 unit = e * xi + en * sp;
      line += inner.weight[m] * eval(Vec2{a * unit.x, b * unit.y});
    }
    sum += outer.weight[k] * cp * width * line;
  }
  return sum * 2.0 * h * a * b;
}

template <class Eval>
double parabola_chord_impl(const Eval& eval, double c, double x1, double x2) {
  if (x1 == x2) throw InvalidArgument("parabola chord: endpoints coincide");
  const double delta = x2 - x1;
  // x = x1 + delta u, y = c x^2 + s c delta^2 u (1 - u); polynomial in (u, s).
  const auto& outer = rule6();
  const auto& inner = rule3();
  double sum = 0.0;
  for (std::size_t k = 0; k < outer.node.size(); ++k) {
    const double u = outer.node[k];
    const double x = x1 + delta * u;
    const double lo = c * x * x;
    const double width = c * delta * delta * u * (1.0 - u);
    double line = 0.0;
    for (std::size_t m = 0; m < inner.node.size(); ++m) line += inner.weight[m] * eval(Vec2{x, lo + inner.node[m] * width});
    sum += outer.weight[k] * line * width;
  }
  return sum * std::abs(delta);
}

double hyperbola_closed_form(const Polynomial2& gs, double k, double x1, double x2) {
  const double rho = (x2 - x1) / x1;
  const double tau = rho * rho / (1.0 + rho);
  double sum = 0.0;
  for (int i = 0; i <= 4; ++i) {
    for (int j = 0; i + j <= 4; ++j) {
      const double b = gs.coeff(i, j);
      if (b == 0.0) continue;
      const int n = i - j - 1;
      double inner = 0.0;
      double tau_pow = tau;
      for (int m = 0; m <= j; ++m) {
        inner += binomial(j, m) / (m + 1) * tau_pow * beta_moment(m + 1, n, rho);
        tau_pow *= tau;
      }
      sum += b * std::pow(x1, i - j) * std::pow(k, j) * inner;
    }
  }
  return sum * rho * std::abs(k);
}

template <class Eval>
double hyperbola_chord_impl(const Polynomial2& gs, const Eval& eval, double k, double x1, double x2) {
  if (x1 == x2) throw InvalidArgument("hyperbola chord: endpoints coincide");
  if (!(x1 * x2 > 0.0)) throw InvalidArgument("hyperbola chord: endpoints on different branches");
  if (k == 0.0) throw InvalidArgument("hyperbola chord: k must be nonzero");
  // Start from the endpoint nearer the asymptote x = 0 so that rho >= 0.
  if (std::abs(x1) > std::abs(x2)) std::swap(x1, x2);
  const Vec2 p1{x1, k / x1};
  const Vec2 p2{x2, k / x2};
  const double far = std::max(norm(p1), norm(p2)) / norm(p2 - p1);
  if (far <= kFarRatio) return hyperbola_closed_form(gs, k, x1, x2);

  // Far from the center the chord is short in ratio (rho < 1/3), so the
  // rational integrand in x is smooth on the whole interval.
  const double delta = x2 - x1;
  const auto& outer = rule24();
  const auto& inner = rule3();
  double sum = 0.0;
  for (std::size_t q = 0; q < outer.node.size(); ++q) {
    const double t = outer.node[q];
    const double x = x1 + delta * t;
    const double w = k * delta * delta * t * (1.0 - t) / (x * x1 * x2);
    double line = 0.0;
    for (std::size_t m = 0; m < inner.node.size(); ++m) line += inner.weight[m] * eval(Vec2{x, k / x + inner.node[m] * w});
    sum += outer.weight[q] * std::abs(w) * line;
  }
  return sum * std::abs(delta);
}

Polynomial2 to_standard_coords(const Polynomial2& g, const Conic& c) {
  return poly_compose_affine(g, c.from_standard());
}

// Region between the chord p-q of the conic and its arc, on the side of r.
// World coordinates; p and q on the conic.
double chord_region(const Polynomial2& g, const Conic& c, Vec2 p, Vec2 q, Vec2 r) {
  const auto gs = to_standard_coords(g, c);
  const auto world = [&](Vec2 s) { return poly_eval(g, c.from_standard()(s)); };
  const Vec2 sp = c.to_standard()(p);
  const Vec2 sq = c.to_standard()(q);
  const auto& prm = c.params();
  switch (c.type()) {
    case ConicClass::Ellipse: {
      const Vec2 sr = c.to_standard()(r);
      const auto scaled = [&](Vec2 v) { return Vec2{v.x / prm.a, v.y / prm.b}; };
      // The counterclockwise arc from p to q lies to the right of p -> q.
      const double side = cross(scaled(sq) - scaled(sp), scaled(sr) - scaled(sp));
      return side < 0.0 ? ellipse_segment_impl(gs, world, prm.a, prm.b, sp, sq)
                        : ellipse_segment_impl(gs, world, prm.a, prm.b, sq, sp);
    }
    case ConicClass::Parabola: return parabola_chord_impl(world, prm.c, sp.x, sq.x);
    case ConicClass::Hyperbola:
      return c.from_standard().jacobian() * hyperbola_chord_impl(gs, world, prm.k, sp.x, sq.x);
    default: break;
  }
  throw InvalidArgument("chord region needs a nondegenerate conic");
}

BaseResult full_or_empty(const Polynomial2& g, const Conic& c, const Triangle& t) {
  if (detail::nonnegative_inside(c.f(), t)) return {triangle_integral(g, t), 0.0, "probe:full"};
  return {0.0, 0.0, "probe:empty"};
}

BaseResult chord_case(const Polynomial2& g, const Conic& c, const Triangle& t, int ip, int iq) {
  const int ir = 3 - ip - iq;
  const Vec2 p = t[ip];
  const Vec2 q = t[iq];
  const Vec2 r = t[ir];
  const Vec2 m = midpoint(p, q);
  auto hits = segment_hits(c.f(), {m, r}, false, false, c.tolerances());
  const bool crossed = std::any_of(hits.begin(), hits.end(), [](const SegmentHit& h) { return !h.at_vertex; });
  if (!crossed) return full_or_empty(g, c, t);
  if (c.type() == ConicClass::Hyperbola && c.branch_of(p) != c.branch_of(q))
    throw SubdivisionFailure("chord region spans both hyperbola branches");
  const double region = chord_region(g, c, p, q, r);
  if (poly_eval(c.f(), m) > 0.0) return {region, 0.0, "chord"};
  const double full = triangle_integral(g, t);
  return {full - region, std::max(std::abs(full), std::abs(region)), "triangle-minus-chord"};
}

}  // namespace

namespace debug {

ScopedTrigTableCorruption::ScopedTrigTableCorruption() { g_corruption.fetch_add(1); }
ScopedTrigTableCorruption::~ScopedTrigTableCorruption() { g_corruption.fetch_sub(1); }
bool trig_table_corrupted() { return g_corruption.load() > 0; }

}  // namespace debug

double trig_moment(int i, int j) { return 2.0 * kPi * lookup(i, j).alpha[0]; }

double trig_partial(int i, int j, double t1, double t2) {
  const auto lin = lookup(i, j);
  const double mid = 0.5 * (t1 + t2);
  const double half = 0.5 * (t2 - t1);
  double sum = lin.alpha[0] * (t2 - t1);
  for (int m = 1; m <= kTrigOrder; ++m) {
    const double a = lin.alpha[static_cast<std::size_t>(m)];
    const double b = lin.beta[static_cast<std::size_t>(m)];
    if (a == 0.0 && b == 0.0) continue;
    // sin(m t2) - sin(m t1) and cos(m t1) - cos(m t2) in product form.
    const double s = 2.0 * std::sin(m * half) / m;
    sum += a * std::cos(m * mid) * s + b * std::sin(m * mid) * s;
  }
  return sum;
}

double ellipse_interior_integral(const Polynomial2& g, const Conic& e) {
  if (e.type() != ConicClass::Ellipse) throw InvalidArgument("ellipse_interior_integral: not an ellipse");
  return ellipse_full(to_standard_coords(g, e), e.params().a, e.params().b);
}

EllipsePosition ellipse_triangle_position(const Conic& e, const Triangle& t) {
  if (e.type() != ConicClass::Ellipse) throw InvalidArgument("ellipse_triangle_position: not an ellipse");
  const double a = e.params().a;
  const double b = e.params().b;
  const auto unit = [&](Vec2 v) {
    const Vec2 s = e.to_standard()(v);
    return Vec2{s.x / a, s.y / b};
  };
  if (norm(unit(t[0])) < 1.0) return EllipsePosition::TriangleInsideEllipse;
  const auto mapped = Triangle::make(unit(t[0]), unit(t[1]), unit(t[2]), 0.0);
  if (mapped && point_in_triangle({0.0, 0.0}, *mapped, e.tolerances().barycentric) == PointLocation::Inside)
    return EllipsePosition::EllipseInsideTriangle;
  return EllipsePosition::Disjoint;
}

double ellipse_segment_integral(const Polynomial2& g, double a, double b, Vec2 p1, Vec2 p2) {
  return ellipse_segment_impl(g, [&](Vec2 s) { return poly_eval(g, s); }, a, b, p1, p2);
}

double circle_segment_integral(const Polynomial2& g, double r, Vec2 p1, Vec2 p2) {
  return ellipse_segment_integral(g, r, r, p1, p2);
}

double parabola_chord_integral(const Polynomial2& g, double c, double x1, double x2) {
  return parabola_chord_impl([&](Vec2 s) { return poly_eval(g, s); }, c, x1, x2);
}

double hyperbola_chord_integral(const Polynomial2& g, double k, double x1, double x2) {
  return hyperbola_chord_impl(g, [&](Vec2 s) { return poly_eval(g, s); }, k, x1, x2);
}

BaseResult integrate_free_triangle(const Polynomial2& g, const Conic& c, const Piece& piece) {
  const Triangle& t = piece.tri;
  switch (piece.free_case) {
    case FreeCase::NoContact:
    case FreeCase::BoundaryTouch: {
      if (c.type() != ConicClass::Ellipse) return full_or_empty(g, c, t);
      const bool inside_wanted = c.factor() < 0.0;
      switch (ellipse_triangle_position(c, t)) {
        case EllipsePosition::TriangleInsideEllipse:
          return inside_wanted ? BaseResult{triangle_integral(g, t), 0.0, "inside-ellipse"}
                               : BaseResult{0.0, 0.0, "inside-ellipse"};
        case EllipsePosition::EllipseInsideTriangle: {
          const double e = ellipse_interior_integral(g, c);
          if (inside_wanted) return {e, 0.0, "ellipse"};
          const double full = triangle_integral(g, t);
          return {full - e, std::max(std::abs(full), std::abs(e)), "triangle-minus-ellipse"};
        }
        case EllipsePosition::Disjoint:
          return inside_wanted ? BaseResult{0.0, 0.0, "outside-ellipse"}
                               : BaseResult{triangle_integral(g, t), 0.0, "outside-ellipse"};
      }
      break;
    }
    case FreeCase::OneVertex: return full_or_empty(g, c, t);
    case FreeCase::TwoVertices: {
      int r = 0;
      while (piece.on[static_cast<std::size_t>(r)]) ++r;
      return chord_case(g, c, t, (r + 1) % 3, (r + 2) % 3);
    }
    case FreeCase::ThreeVertices: {
      if (c.type() != ConicClass::Hyperbola) return full_or_empty(g, c, t);
      const int b0 = c.branch_of(t[0]);
      const int b1 = c.branch_of(t[1]);
      const int b2 = c.branch_of(t[2]);
      if (b0 == b1 && b1 == b2) return full_or_empty(g, c, t);
      if (b0 == b1) return chord_case(g, c, t, 0, 1);
      if (b1 == b2) return chord_case(g, c, t, 1, 2);
      return chord_case(g, c, t, 2, 0);
    }
  }
  throw InvalidArgument("integrate_free_triangle: unknown case");
}

double integrate_free_triangle(const Polynomial2& g, const Conic& c, const Triangle& t, FreeCase status) {
  const auto s = triangle_freedom(c, t);
  if (s.kind != FreeStatus::Kind::Free || s.free_case != status)
    throw InvalidArgument("integrate_free_triangle: status does not match the triangle");
  return integrate_free_triangle(g, c, Piece{t, s.vertex_on, Provenance::Input, s.free_case}).value;
}

}  // namespace conicquad
