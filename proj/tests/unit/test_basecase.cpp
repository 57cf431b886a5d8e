#include <gtest/gtest.h>

#include <cmath>
#include <map>
#include <numbers>
#include <random>

#include "conicquad/basecase.hpp"
#include "conicquad/errors.hpp"
#include "conicquad/oracle.hpp"
#include "instances.hpp"

namespace conicquad {
namespace {

using P = Polynomial2;
constexpr double kPi = std::numbers::pi;

const P kUnitCircle = P::quadratic(1, 0, 1, 0, 0, -1);
const P kUnitDisc = P::quadratic(-1, 0, -1, 0, 0, 1);
const P kOne{{0, 0, 1.0}};

TEST(TrigMoment, Examples) {
  EXPECT_NEAR(trig_moment(0, 0), 2 * kPi, 1e-15);
  EXPECT_NEAR(trig_moment(1, 0), 0.0, 1e-15);
  EXPECT_NEAR(trig_moment(2, 2), kPi / 4, 1e-15);
}

TEST(TrigMoment, OrderOutOfRangeThrows) { EXPECT_THROW(trig_moment(4, 3), InvalidArgument); }

// Wallis: int cos^2m sin^2n = 2 pi (2m-1)!! (2n-1)!! / (2m+2n)!!.
TEST(TrigMoment, WallisTable) {
  auto dfact = [](int n) {
    double r = 1.0;
    for (int k = n; k > 1; k -= 2) r *= k;
    return r;
  };
  for (int m = 0; m <= 3; ++m)
    for (int n = 0; m + n <= 3; ++n) {
      const double expected = 2 * kPi * dfact(2 * m - 1) * dfact(2 * n - 1) / dfact(2 * m + 2 * n);
      EXPECT_NEAR(trig_moment(2 * m, 2 * n), expected, 1e-14) << m << " " << n;
    }
  for (int i = 0; i <= 6; ++i)
    for (int j = 0; i + j <= 6; ++j)
      if (i % 2 || j % 2) EXPECT_NEAR(trig_moment(i, j), 0.0, 1e-14);
}

TEST(TrigPartial, MatchesSimpson) {
  const double t1 = 0.3, t2 = 2.1;
  for (int i = 0; i <= 6; ++i)
    for (int j = 0; i + j <= 6; ++j) {
      const int n = 2000;
      const double h = (t2 - t1) / n;
      double s = 0.0;
      for (int k = 0; k <= n; ++k) {
        const double t = t1 + k * h;
        const double w = (k == 0 || k == n) ? 1 : (k % 2 ? 4 : 2);
        s += w * std::pow(std::cos(t), i) * std::pow(std::sin(t), j);
      }
      EXPECT_NEAR(trig_partial(i, j, t1, t2), s * h / 3, 1e-12);
    }
}

TEST(EllipseInterior, Examples) {
  EXPECT_NEAR(ellipse_interior_integral(kOne, Conic(kUnitCircle)), kPi, 1e-15);
  EXPECT_NEAR(ellipse_interior_integral(P{{2, 0, 1.0}}, Conic(kUnitCircle)), kPi / 4, 1e-15);
  EXPECT_NEAR(ellipse_interior_integral(kOne, Conic(P::quadratic(4, 0, 9, 0, 0, -36))), 6 * kPi, 1e-14);
}

TEST(EllipseInterior, AreaIsPiAB) {
  std::mt19937_64 rng(51);
  std::uniform_real_distribution<double> u(0.1, 10.0), ang(0.0, 2 * kPi), sh(-5, 5);
  for (int k = 0; k < 200; ++k) {
    const double a = u(rng), b = u(rng);
    const P std_form = P::quadratic(1 / (a * a), 0, 1 / (b * b), 0, 0, -1);
    const AffineMap2 m = AffineMap2::rigid(ang(rng), {sh(rng), sh(rng)});
    const P f = poly_compose_affine(std_form, m.inverse());
    EXPECT_NEAR(ellipse_interior_integral(kOne, Conic(f)), kPi * a * b, 1e-12 * kPi * a * b);
  }
}

TEST(EllipseTrianglePosition, Examples) {
  const Conic c(kUnitCircle);
  EXPECT_EQ(ellipse_triangle_position(c, Triangle({-0.1, -0.1}, {0.1, -0.1}, {0, 0.1})),
            EllipsePosition::TriangleInsideEllipse);
  EXPECT_EQ(ellipse_triangle_position(c, Triangle({-5, -5}, {5, -5}, {0, 7})), EllipsePosition::EllipseInsideTriangle);
  EXPECT_EQ(ellipse_triangle_position(c, Triangle({2, 0}, {3, 0}, {2, 1})), EllipsePosition::Disjoint);
}

TEST(CircleSegment, Examples) {
  EXPECT_NEAR(circle_segment_integral(kOne, 1.0, {1, 0}, {0, 1}), kPi / 4 - 0.5, 1e-15);
  EXPECT_NEAR(circle_segment_integral(kOne, 1.0, {-1, 0}, {1, 0}), kPi / 2, 1e-15);
  EXPECT_NEAR(circle_segment_integral(P{{0, 1, 1.0}}, 1.0, {1, 0}, {-1, 0}), 2.0 / 3.0, 1e-15);
}

TEST(CircleSegment, CoincidentEndpointsThrow) {
  EXPECT_THROW(circle_segment_integral(kOne, 1.0, {1, 0}, {1, 0}), InvalidArgument);
}

TEST(CircleSegment, MinorPlusMajorIsDisc) {
  std::mt19937_64 rng(52);
  std::uniform_real_distribution<double> ang(-kPi, kPi), u(-1, 1), rad(0.2, 5.0);
  for (int k = 0; k < 200; ++k) {
    P g;
    for (int i = 0; i <= 4; ++i)
      for (int j = 0; i + j <= 4; ++j) g.set(i, j, u(rng));
    const double r = rad(rng);
    const double t1 = ang(rng), t2 = ang(rng);
    const Vec2 p1{r * std::cos(t1), r * std::sin(t1)};
    const Vec2 p2{r * std::cos(t2), r * std::sin(t2)};
    const double disc = ellipse_interior_integral(g, Conic(P::quadratic(1, 0, 1, 0, 0, -r * r)));
    const double both = circle_segment_integral(g, r, p1, p2) + circle_segment_integral(g, r, p2, p1);
    double scale = 0.0;
    for (double v : g.raw()) scale += std::abs(v);
    EXPECT_NEAR(both, disc, 1e-12 * scale * std::pow(r, 6) + 1e-13);
  }
}

TEST(EllipseSegment, ReducesToCircle) {
  const P g{{2, 1, 1.0}, {0, 0, 0.5}};
  const Vec2 p1{0.6, 0.8}, p2{-1, 0};
  EXPECT_NEAR(ellipse_segment_integral(g, 1.0, 1.0, p1, p2), circle_segment_integral(g, 1.0, p1, p2), 1e-15);
}

TEST(ParabolaChord, Examples) {
  EXPECT_NEAR(parabola_chord_integral(kOne, 1.0, -1, 1), 4.0 / 3.0, 1e-15);
  EXPECT_NEAR(parabola_chord_integral(kOne, 1.0, 0, 1), 1.0 / 6.0, 1e-15);
  EXPECT_NEAR(parabola_chord_integral(P{{1, 0, 1.0}}, 1.0, -1, 1), 0.0, 1e-15);
  EXPECT_NEAR(parabola_chord_integral(kOne, 1.0, 1, 0), 1.0 / 6.0, 1e-15);
}

TEST(ParabolaChord, CoincidentEndpointsThrow) { EXPECT_THROW(parabola_chord_integral(kOne, 1.0, 1, 1), InvalidArgument); }

TEST(HyperbolaChord, Examples) {
  const double expected = 0.75 - std::numbers::ln2;
  EXPECT_NEAR(hyperbola_chord_integral(kOne, 1.0, 1, 2), expected, 1e-15);
  EXPECT_NEAR(hyperbola_chord_integral(kOne, 1.0, -2, -1), expected, 1e-15);
}

TEST(HyperbolaChord, InvalidChordsThrow) {
  EXPECT_THROW(hyperbola_chord_integral(kOne, 1.0, 1, 1), InvalidArgument);
  EXPECT_THROW(hyperbola_chord_integral(kOne, 1.0, -1, 1), InvalidArgument);
}

TEST(ChordIntegrals, PositiveAndBoundedByBox) {
  std::mt19937_64 rng(53);
  std::uniform_real_distribution<double> u(0.1, 3.0), s(-3.0, 3.0);
  for (int k = 0; k < 200; ++k) {
    const double c = u(rng), x1 = s(rng), x2 = s(rng);
    if (std::abs(x1 - x2) < 1e-3) continue;
    const double v = parabola_chord_integral(kOne, c, x1, x2);
    const double box = std::abs(x2 - x1) * c * std::max(x1 * x1, x2 * x2);
    EXPECT_GT(v, 0.0);
    EXPECT_LE(v, box);
  }
  for (int k = 0; k < 200; ++k) {
    const double kk = u(rng), x1 = u(rng), x2 = u(rng);
    if (std::abs(x1 - x2) < 1e-3) continue;
    const double v = hyperbola_chord_integral(kOne, kk, x1, x2);
    const double box = std::abs(x2 - x1) * std::abs(kk / x2 - kk / x1);
    EXPECT_GT(v, 0.0);
    EXPECT_LE(v, box);
  }
}

TEST(FreeTriangle, Examples) {
  EXPECT_NEAR(integrate_free_triangle(kOne, Conic(kUnitCircle), Triangle({2, 0}, {3, 0}, {2, 1}), FreeCase::NoContact),
              0.5, 1e-15);
  EXPECT_NEAR(integrate_free_triangle(kOne, Conic(kUnitDisc), Triangle({1, 0}, {0, 1}, {1, 1}), FreeCase::TwoVertices),
              kPi / 4 - 0.5, 1e-15);
  EXPECT_NEAR(integrate_free_triangle(kOne, Conic(kUnitDisc), Triangle({-5, -5}, {5, -5}, {0, 7}), FreeCase::NoContact),
              kPi, 1e-14);
}

TEST(FreeTriangle, WrongStatusThrows) {
  EXPECT_THROW(integrate_free_triangle(kOne, Conic(kUnitDisc), Triangle({2, 0}, {3, 0}, {2, 1}), FreeCase::TwoVertices),
               InvalidArgument);
}

// Free pieces of random decompositions, bucketed by case.
std::map<FreeCase, std::vector<std::pair<tools::Instance, Piece>>> free_pieces(std::size_t per_case) {
  std::map<FreeCase, std::vector<std::pair<tools::Instance, Piece>>> out;
  tools::InstanceGenerator gen(54);
  const ConicClass classes[] = {ConicClass::Ellipse, ConicClass::Parabola, ConicClass::Hyperbola};
  for (int k = 0; k < 3000; ++k) {
    const auto in = gen.make(classes[k % 3]);
    const Conic c(in.f);
    if (!is_nondegenerate(c.type())) continue;
    for (const auto& p : decompose(c, in.t).pieces) {
      auto& bucket = out[p.free_case];
      if (bucket.size() < per_case) bucket.emplace_back(in, p);
    }
  }
  return out;
}

TEST(FreeTriangle, ComplementAndOracleAgreement) {
  // Tangential contact has measure zero, so BoundaryTouch has its own test.
  const auto buckets = free_pieces(100);
  EXPECT_EQ(buckets.size(), 4u);
  for (const auto& [fc, items] : buckets) {
    EXPECT_GE(items.size(), 20u) << to_string(fc);
    for (const auto& [in, piece] : items) {
      const Conic c(in.f);
      const Conic nc(-in.f);
      const double a = integrate_free_triangle(in.g, c, piece).value;
      Piece flipped = piece;
      const double b = integrate_free_triangle(in.g, nc, flipped).value;
      const double whole = triangle_integral(in.g, piece.tri);
      const double scale = std::max({std::abs(a), std::abs(b), std::abs(whole)});
      EXPECT_LE(std::abs(a + b - whole), 1e-11 * scale) << to_string(fc);

      const auto o = oracle_integrate(in.g, in.f, piece.tri, 1e-9 * std::max(scale, piece.tri.area()));
      EXPECT_LE(std::abs(a - o.value), std::max(1e-7 * std::abs(o.value), o.error_bound + 1e-12)) << to_string(fc);
    }
  }
}

struct Touch {
  const char* name;
  P f;
  Triangle t;
  int expected;  // 0: empty, 1: whole triangle, 2: the ellipse interior
};

class BoundaryTouch : public ::testing::TestWithParam<Touch> {};

TEST_P(BoundaryTouch, ConstantSideOfTangent) {
  const auto& k = GetParam();
  const P g{{0, 0, 1.0}, {2, 0, 1.0}, {1, 1, -0.5}, {4, 0, 0.25}};
  const Conic c(k.f);
  ASSERT_EQ(triangle_freedom(c, k.t).free_case, FreeCase::BoundaryTouch);
  const double whole = triangle_integral(g, k.t);
  const double expected = k.expected == 0 ? 0.0 : k.expected == 1 ? whole : ellipse_interior_integral(g, c);
  const double v = integrate_free_triangle(g, c, k.t, FreeCase::BoundaryTouch);
  const double w = integrate_free_triangle(g, Conic(-k.f), k.t, FreeCase::BoundaryTouch);
  EXPECT_NEAR(v, expected, 1e-13 * std::abs(whole));
  EXPECT_NEAR(v + w, whole, 1e-13 * std::abs(whole));
}

INSTANTIATE_TEST_SUITE_P(
    Tangents, BoundaryTouch,
    ::testing::Values(Touch{"circle_outside", kUnitDisc, Triangle({-2, 1}, {2, 1}, {0, 3}), 0},
                      Touch{"circle_inside", kUnitDisc, Triangle({-5, -1}, {5, -1}, {0, 6}), 2},
                      Touch{"parabola", P::quadratic(-1, 0, 0, 0, 1, 0), Triangle({-1, 0}, {1, 0}, {0, -1}), 0},
                      Touch{"hyperbola", P::quadratic(0, 1, 0, 0, 0, -1), Triangle({2.5, -0.5}, {-0.5, 2.5}, {0, 0}), 0}),
    [](const auto& info) { return std::string(info.param.name); });

TEST(Degenerate, EmptyIsZero) {
  const P f = P::quadratic(-1, 0, -1, 0, 0, -1);
  const auto r = degenerate_integral(kOne, Conic(f), Triangle({0, 0}, {1, 0}, {0, 1}));
  EXPECT_EQ(r.value, 0.0);
}

TEST(Degenerate, DoubleLineCoversTriangle) {
  const Triangle t({-1, -1}, {2, 0}, {0, 3});
  const auto r = degenerate_integral(kOne, Conic(P::quadratic(1, 0, 0, 0, 0, 0)), t);
  EXPECT_NEAR(r.value, t.area(), 1e-15 * t.area());
}

TEST(Degenerate, CrossingLinesThreeQuadrants) {
  const P f = P::quadratic(0, 1, 0, 0, 0, 0);
  const Triangle t({-1, 3}, {-1, -1}, {3, -1});
  const auto r = degenerate_integral(kOne, Conic(f), t);
  // Quadrant I piece is the triangle (0,0),(2,0),(0,2) and quadrant III is the unit square.
  EXPECT_NEAR(r.value, 2.0 + 1.0, 1e-14);
  const auto o = oracle_integrate(kOne, f, t, 1e-9);
  EXPECT_LE(std::abs(r.value - o.value), o.error_bound + 1e-12);
}

TEST(Degenerate, ParallelLinesAgainstOracle) {
  tools::InstanceGenerator gen(55);
  for (int k = 0; k < 50; ++k) {
    const auto in = gen.make(ConicClass::ParallelLines);
    const Conic c(in.f);
    if (c.type() != ConicClass::ParallelLines) continue;
    const auto r = degenerate_integral(in.g, c, in.t);
    const double scale = std::max(std::abs(triangle_integral(in.g, in.t)), in.t.area());
    const auto o = oracle_integrate(in.g, in.f, in.t, 1e-10 * scale);
    EXPECT_LE(std::abs(r.value - o.value), o.error_bound + 1e-12 * scale);
  }
}

TEST(Degenerate, NondegenerateRejected) {
  EXPECT_THROW(degenerate_integral(kOne, Conic(kUnitCircle), Triangle({0, 0}, {1, 0}, {0, 1})), InvalidArgument);
}

}  // namespace
}  // namespace conicquad
