#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "conicquad/conic.hpp"
#include "conicquad/errors.hpp"
#include "conicquad/geometry.hpp"

namespace conicquad {
namespace {

using P = Polynomial2;

const P kUnitCircle = P::quadratic(1, 0, 1, 0, 0, -1);

double coeff_norm(const P& f) {
  double m = 0.0;
  for (double v : f.raw()) m = std::max(m, std::abs(v));
  return m;
}

TEST(ConicClassify, Examples) {
  EXPECT_EQ(conic_classify(kUnitCircle), ConicClass::Ellipse);
  EXPECT_EQ(conic_classify(P::quadratic(1, 0, 0, -1, 0, 0)), ConicClass::ParallelLines);
  EXPECT_EQ(conic_classify(P::quadratic(0, 1, 0, 0, 0, 0)), ConicClass::CrossingLines);
}

TEST(ConicClassify, AllClasses) {
  EXPECT_EQ(conic_classify(P::quadratic(-1, 0, 0, 0, 1, 0)), ConicClass::Parabola);
  EXPECT_EQ(conic_classify(P::quadratic(0, 1, 0, 0, 0, -1)), ConicClass::Hyperbola);
  EXPECT_EQ(conic_classify(P::quadratic(1, 0, 0, 0, 0, 0)), ConicClass::DoubleLine);
  EXPECT_EQ(conic_classify(P::quadratic(0, 0, 0, 1, 2, 3)), ConicClass::SingleLine);
  EXPECT_EQ(conic_classify(P::quadratic(1, 0, 1, 0, 0, 0)), ConicClass::Point);
  EXPECT_EQ(conic_classify(P::quadratic(1, 0, 1, 0, 0, 1)), ConicClass::Empty);
  EXPECT_EQ(conic_classify(P::quadratic(0, 0, 0, 0, 0, 2)), ConicClass::ConstantSign);
  // Parallel lines with no real points.
  EXPECT_EQ(conic_classify(P::quadratic(1, 0, 0, 0, 0, 1)), ConicClass::Empty);
}

TEST(ConicClassify, RigidInvariance) {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  int checked = 0;
  for (int k = 0; k < 500; ++k) {
    const P f = P::quadratic(u(rng), u(rng), u(rng), u(rng), u(rng), u(rng));
    const AffineMap2 m = AffineMap2::rigid(3.0 * u(rng), {u(rng), u(rng)});
    const Conic c(f);
    // Inputs sitting on a classification boundary may legitimately flip.
    if (c.margin() < 1e3) continue;
    EXPECT_EQ(conic_classify(poly_compose_affine(f, m)), c.type()) << k;
    ++checked;
  }
  EXPECT_GT(checked, 450);
}

TEST(NormalizeConic, EllipseAxisAligned) {
  const Conic c = normalize_conic(P::quadratic(4, 0, 9, 0, 0, -36));
  ASSERT_EQ(c.type(), ConicClass::Ellipse);
  EXPECT_NEAR(c.params().a, 3.0, 1e-14);
  EXPECT_NEAR(c.params().b, 2.0, 1e-14);
  const auto& l = c.to_standard().linear();
  EXPECT_NEAR(std::abs(l[0]), 1.0, 1e-14);
  EXPECT_NEAR(std::abs(l[3]), 1.0, 1e-14);
  EXPECT_NEAR(l[1], 0.0, 1e-14);
  EXPECT_NEAR(l[2], 0.0, 1e-14);
}

TEST(NormalizeConic, Parabola) {
  const Conic c = normalize_conic(P::quadratic(1, 2, 1, 1, -1, 0));
  EXPECT_EQ(c.type(), ConicClass::Parabola);
  EXPECT_GT(c.params().c, 0.0);
}

TEST(NormalizeConic, HyperbolaAsymptoteFrame) {
  const Conic c = normalize_conic(P::quadratic(1, 0, -1, 0, 0, -1));
  ASSERT_EQ(c.type(), ConicClass::Hyperbola);
  EXPECT_NEAR(std::abs(c.params().k), 0.5, 1e-14);
  // Asymptotes along the diagonals.
  EXPECT_NEAR(std::abs(c.params().dir1.x), std::numbers::sqrt2 / 2, 1e-14);
  EXPECT_NEAR(std::abs(c.params().dir1.y), std::numbers::sqrt2 / 2, 1e-14);
  EXPECT_NEAR(std::abs(dot(c.params().dir1, c.params().dir2)), 0.0, 1e-14);
}

TEST(NormalizeConic, ZeroPolynomialThrows) { EXPECT_THROW(normalize_conic(P(2)), InvalidArgument); }

TEST(NormalizeConic, EmptyAndPointHaveNoFrame) {
  EXPECT_FALSE(normalize_conic(P::quadratic(1, 0, 1, 0, 0, 1)).has_frame());
}

// f o from_standard == factor * standard form on a grid.
TEST(NormalizeConic, StandardFormReproducesF) {
  std::mt19937_64 rng(22);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  int checked = 0;
  for (int k = 0; k < 500; ++k) {
    const P f = P::quadratic(u(rng), u(rng), u(rng), u(rng), u(rng), u(rng));
    const Conic c(f);
    if (!is_nondegenerate(c.type()) || c.margin() < 1e3) continue;
    const P pulled = poly_compose_affine(f, c.from_standard());
    const P sf = c.standard_form();
    for (int i = 0; i < 10; ++i)
      for (int j = 0; j < 10; ++j) {
        const Vec2 v{-1.0 + i * 2.0 / 9.0, -1.0 + j * 2.0 / 9.0};
        EXPECT_LE(std::abs(poly_eval(pulled, v) - c.factor() * poly_eval(sf, v)), 1e-9 * coeff_norm(f));
      }
    ++checked;
  }
  EXPECT_GT(checked, 300);
}

TEST(SegmentIntersections, TwoCrossings) {
  const auto hits = conic_segment_intersections(Conic(kUnitCircle), {{-2, 0}, {2, 0}});
  ASSERT_EQ(hits.size(), 2u);
  EXPECT_NEAR(hits[0].point.x, -1.0, 1e-15);
  EXPECT_NEAR(hits[1].point.x, 1.0, 1e-15);
  EXPECT_NEAR(hits[0].param, 0.25, 1e-15);
  EXPECT_NEAR(hits[1].param, 0.75, 1e-15);
  EXPECT_EQ(hits[0].multiplicity, 1);
  EXPECT_FALSE(hits[0].at_vertex);
}

TEST(SegmentIntersections, Tangent) {
  const auto hits = conic_segment_intersections(Conic(kUnitCircle), {{-2, 1}, {2, 1}});
  ASSERT_EQ(hits.size(), 1u);
  EXPECT_EQ(hits[0].multiplicity, 2);
  EXPECT_NEAR(hits[0].point.x, 0.0, 1e-12);
  EXPECT_NEAR(hits[0].point.y, 1.0, 1e-12);
}

TEST(SegmentIntersections, EndpointOnCurve) {
  const auto hits = conic_segment_intersections(Conic(P::quadratic(0, 1, 0, 0, 0, -1)), {{1, 1}, {3, 1}});
  ASSERT_EQ(hits.size(), 1u);
  EXPECT_TRUE(hits[0].at_vertex);
  EXPECT_EQ(hits[0].param, 0.0);
  EXPECT_EQ(hits[0].point, (Vec2{1, 1}));
}

TEST(SegmentIntersections, PointsLieOnConic) {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int k = 0; k < 500; ++k) {
    const P f = P::quadratic(u(rng), u(rng), u(rng), u(rng), u(rng), u(rng));
    const Conic c(f);
    const Segment s{{u(rng), u(rng)}, {u(rng), u(rng)}};
    const double len = std::max(s.length(), 1.0);
    for (const auto& h : conic_segment_intersections(c, s)) {
      EXPECT_GE(h.param, 0.0);
      EXPECT_LE(h.param, 1.0);
      if (h.multiplicity == 1 && !h.at_vertex)
        EXPECT_LE(std::abs(poly_eval(f, h.point)), 1e-9 * coeff_norm(f) * len * len * 16.0);
    }
  }
}

TEST(SegmentIsFree, Examples) {
  const Conic c(kUnitCircle);
  EXPECT_TRUE(segment_is_free(c, {{-1, 0}, {1, 0}}));
  EXPECT_FALSE(segment_is_free(c, {{-2, 0}, {2, 0}}));
  EXPECT_TRUE(segment_is_free(c, {{2, 0}, {3, 0}}));
}

bool contains_point(const std::vector<Vec2>& pts, Vec2 q, double eps) {
  for (Vec2 p : pts)
    if (norm(p - q) < eps) return true;
  return false;
}

TEST(TangencyPoints, CircleParallelTangent) {
  const auto pts = tangency_interior_points(Conic(kUnitCircle), {1, 0}, {2, 0}, {0, 2});
  const double h = std::numbers::sqrt2 / 2;
  EXPECT_TRUE(contains_point(pts, {h, h}, 1e-12));
}

TEST(TangencyPoints, CirclePolar) {
  const auto pts = tangency_interior_points(Conic(kUnitCircle), {1, 0}, {2, 0}, {0, 2});
  const double s = std::sqrt(3.0) / 2;
  EXPECT_TRUE(contains_point(pts, {0.5, s}, 1e-12) || contains_point(pts, {0.5, -s}, 1e-12));
  for (Vec2 p : pts) EXPECT_TRUE(on_conic(kUnitCircle, p));
}

TEST(TangencyPoints, ParabolaMeanValue) {
  const P f = P::quadratic(-1, 0, 0, 0, 1, 0);
  const auto pts = tangency_interior_points(Conic(f), {0, 0}, {0, 0.5}, {1, 1.5});
  EXPECT_TRUE(contains_point(pts, {0.5, 0.25}, 1e-12));
}

TEST(PointInTriangle, Examples) {
  const Triangle t({0, 0}, {1, 0}, {0, 1});
  EXPECT_EQ(point_in_triangle({0.25, 0.25}, t), PointLocation::Inside);
  EXPECT_EQ(point_in_triangle({0.5, 0.5}, t), PointLocation::Border);
  EXPECT_EQ(point_in_triangle({2, 0}, t), PointLocation::Outside);
  EXPECT_EQ(point_in_triangle({0, 0}, t), PointLocation::Border);
}

}  // namespace
}  // namespace conicquad
