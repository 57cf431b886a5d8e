#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "conicquad/errors.hpp"
#include "conicquad/subdivide.hpp"
#include "instances.hpp"

namespace conicquad {
namespace {

using P = Polynomial2;
using Kind = FreeStatus::Kind;

const P kUnitCircle = P::quadratic(1, 0, 1, 0, 0, -1);

Piece input_piece(const Conic& c, const Triangle& t) {
  Piece p{t, {}, Provenance::Input, FreeCase::NoContact};
  for (int i = 0; i < 3; ++i) p.on[static_cast<std::size_t>(i)] = on_conic(c.f(), t[i]);
  return p;
}

double area_sum(const std::vector<Piece>& pieces) {
  double s = 0.0;
  for (const auto& p : pieces) s += p.tri.area();
  return s;
}

// Every sample of t lies inside exactly one piece or on shared edges only.
void expect_tiles(const Triangle& t, const std::vector<Piece>& pieces, std::uint64_t seed) {
  EXPECT_NEAR(area_sum(pieces), t.area(), 1e-12 * t.area());
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int k = 0; k < 1000; ++k) {
    double a = u(rng), b = u(rng);
    if (a + b > 1.0) a = 1.0 - a, b = 1.0 - b;
    const Vec2 q = t.a() + (t.b() - t.a()) * a + (t.c() - t.a()) * b;
    int inside = 0, border = 0;
    for (const auto& p : pieces) {
      const auto loc = point_in_triangle(q, p.tri);
      inside += loc == PointLocation::Inside;
      border += loc == PointLocation::Border;
    }
    EXPECT_LE(inside, 1);
    EXPECT_GE(inside + border, 1);
  }
}

struct Census {
  int free = 0;
  int almost = 0;
  int other = 0;
};

Census census(const Conic& c, const std::vector<Piece>& pieces) {
  Census out;
  for (const auto& p : pieces) {
    switch (triangle_freedom(c, p).kind) {
      case Kind::Free: ++out.free; break;
      case Kind::AlmostFree: ++out.almost; break;
      case Kind::NotFree: ++out.other; break;
    }
  }
  return out;
}

TEST(Freedom, DisjointTriangle) {
  const auto s = triangle_freedom(Conic(kUnitCircle), Triangle({2, 0}, {3, 0}, {2, 1}));
  EXPECT_EQ(s.kind, Kind::Free);
  EXPECT_EQ(s.free_case, FreeCase::NoContact);
}

TEST(Freedom, OneVertexOnCircle) {
  const auto s = triangle_freedom(Conic(kUnitCircle), Triangle({1, 0}, {3, -1}, {3, 1}));
  EXPECT_EQ(s.kind, Kind::Free);
  EXPECT_EQ(s.free_case, FreeCase::OneVertex);
}

TEST(Freedom, SideCrossingTwiceIsNotFree) {
  const auto s = triangle_freedom(Conic(kUnitCircle), Triangle({0, -2}, {2, 0}, {0, 2}));
  EXPECT_EQ(s.kind, Kind::NotFree);
  EXPECT_EQ(s.free_side_count(), 2);
}

TEST(Freedom, TangentSideIsBoundaryTouch) {
  const auto s = triangle_freedom(Conic(kUnitCircle), Triangle({-2, 1}, {2, 1}, {0, 3}));
  EXPECT_EQ(s.kind, Kind::Free);
  EXPECT_EQ(s.free_case, FreeCase::BoundaryTouch);
}

TEST(Freedom, SingleCrossingIsAlmostFree) {
  const auto s = triangle_freedom(Conic(kUnitCircle), Triangle({-3, -3}, {-3, -0.5}, {0, -1}));
  EXPECT_EQ(s.kind, Kind::AlmostFree);
  EXPECT_TRUE(s.vertex_on[2] || s.vertex_on[0] || s.vertex_on[1]);
}

struct CutCase {
  const char* name;
  Vec2 a, b, c;
  std::size_t pieces;
};

class NoFreeSides : public ::testing::TestWithParam<CutCase> {};

TEST_P(NoFreeSides, SevenOrFewerFreePieces) {
  const auto& k = GetParam();
  const Conic c(kUnitCircle);
  const Triangle t(k.a, k.b, k.c);
  const Piece p = input_piece(c, t);
  const auto s = triangle_freedom(c, p);
  ASSERT_EQ(s.kind, Kind::NotFree);
  ASSERT_EQ(s.free_side_count(), 0);
  const auto out = cut_no_free_sides(c, p, s);
  EXPECT_EQ(out.size(), k.pieces);
  EXPECT_EQ(census(c, out).free, static_cast<int>(out.size()));
  expect_tiles(t, out, 31);
}

INSTANTIATE_TEST_SUITE_P(Signatures, NoFreeSides,
                         ::testing::Values(CutCase{"hits222", {-3, -3}, {-0.5, 1}, {1, -0.5}, 7},
                                           CutCase{"hits221", {-3, -3}, {-0.5, 1}, {0.5, 1}, 6},
                                           CutCase{"hits211", {-3, -3}, {-0.5, -0.5}, {-0.5, 1}, 5},
                                           CutCase{"hits111", {-3, -1}, {-0.5, -0.5}, {0.5, -1}, 4}),
                         [](const auto& info) { return std::string(info.param.name); });

// Circle inscribed in an equilateral triangle: three tangent sides.
TEST(NoFreeSides, IncircleTangentSides) {
  const Conic c(kUnitCircle);
  const double r3 = std::sqrt(3.0);
  const Triangle t({0, 2}, {-r3, -1}, {r3, -1});
  const auto trace = decompose(c, t);
  EXPECT_LE(trace.pieces.size(), 11u);
  EXPECT_EQ(census(c, trace.pieces).free, static_cast<int>(trace.pieces.size()));
  expect_tiles(t, trace.pieces, 32);
}

class OneFreeSide : public ::testing::TestWithParam<CutCase> {};

TEST_P(OneFreeSide, FreeOrAlmostFreePieces) {
  const auto& k = GetParam();
  const Conic c(kUnitCircle);
  const Triangle t(k.a, k.b, k.c);
  const Piece p = input_piece(c, t);
  const auto s = triangle_freedom(c, p);
  ASSERT_EQ(s.kind, Kind::NotFree);
  ASSERT_EQ(s.free_side_count(), 1);
  const auto out = cut_one_free_side(c, p, s);
  EXPECT_EQ(out.size(), k.pieces);
  EXPECT_EQ(census(c, out).other, 0);
  expect_tiles(t, out, 33);
}

INSTANTIATE_TEST_SUITE_P(Signatures, OneFreeSide,
                         ::testing::Values(CutCase{"hits22", {-3, -3}, {-3, -2.5}, {-0.5, 1}, 5},
                                           CutCase{"hits21", {-3, -3}, {-1, -3}, {2, 1}, 4},
                                           CutCase{"hits11", {-3, -3}, {0, 1}, {1, 0}, 3}),
                         [](const auto& info) { return std::string(info.param.name); });

struct TwoSideCase {
  const char* name;
  Vec2 a, b, c;
  int free;
  int almost;
};

class TwoFreeSides : public ::testing::TestWithParam<TwoSideCase> {};

TEST_P(TwoFreeSides, CevianSubcases) {
  const auto& k = GetParam();
  const Conic c(kUnitCircle);
  const Triangle t(k.a, k.b, k.c);
  const Piece p = input_piece(c, t);
  const auto s = triangle_freedom(c, p);
  ASSERT_EQ(s.kind, Kind::NotFree);
  ASSERT_EQ(s.free_side_count(), 2);
  const auto out = cut_two_free_sides(c, p, s);
  const Census n = census(c, out);
  EXPECT_EQ(n.free, k.free);
  EXPECT_EQ(n.almost, k.almost);
  EXPECT_EQ(n.other, 0);
  expect_tiles(t, out, 34);
}

INSTANTIATE_TEST_SUITE_P(Subcases, TwoFreeSides,
                         ::testing::Values(TwoSideCase{"no_new_hits", {-3, -3}, {-3, -1.5}, {2.5, -0.5}, 3, 0},
                                           TwoSideCase{"one_new_hit", {-3, -3}, {-3, -2.5}, {2, 0}, 1, 2},
                                           TwoSideCase{"two_new_hits", {-3, -3}, {-3, 0.5}, {2.5, 1.5}, 1, 3}),
                         [](const auto& info) { return std::string(info.param.name); });

class AlmostFree : public ::testing::TestWithParam<CutCase> {};

TEST_P(AlmostFree, ResolvesToFreePieces) {
  const auto& k = GetParam();
  const Conic c(kUnitCircle);
  const Triangle t(k.a, k.b, k.c);
  const Piece p = input_piece(c, t);
  const auto s = triangle_freedom(c, p);
  ASSERT_EQ(s.kind, Kind::AlmostFree);
  const auto out = resolve_almost_free(c, p, s);
  EXPECT_EQ(out.size(), k.pieces);
  EXPECT_EQ(census(c, out).free, static_cast<int>(out.size()));
  expect_tiles(t, out, 35);
}

INSTANTIATE_TEST_SUITE_P(Cases, AlmostFree,
                         ::testing::Values(CutCase{"opposite_vertex", {-3, -3}, {-1, 0}, {1, 0}, 2},
                                           CutCase{"adjacent_free_cevian", {-3, -3}, {-3, -0.5}, {0, -1}, 2},
                                           CutCase{"tangency_point", {-3, -3}, {-2, 3}, {0, -1}, 4}),
                         [](const auto& info) { return std::string(info.param.name); });

TEST(AlmostFree, FreeInputIsReturnedUnchanged) {
  const Conic c(kUnitCircle);
  const Piece p = input_piece(c, Triangle({2, 0}, {3, 0}, {2, 1}));
  const auto out = resolve_almost_free(c, p, triangle_freedom(c, p));
  ASSERT_EQ(out.size(), 1u);
  EXPECT_EQ(out[0].tri, p.tri);
}

TEST(AlmostFree, RejectsNotFreeInput) {
  const Conic c(kUnitCircle);
  const Piece p = input_piece(c, Triangle({0, -2}, {2, 0}, {0, 2}));
  EXPECT_THROW(resolve_almost_free(c, p, triangle_freedom(c, p)), InvalidArgument);
}

TEST(Decompose, DisjointIsSinglePiece) {
  const Triangle t({2, 0}, {3, 0}, {2, 1});
  const auto trace = decompose(Conic(kUnitCircle), t);
  ASSERT_EQ(trace.pieces.size(), 1u);
  EXPECT_EQ(trace.pieces[0].tri, t);
}

// A circle crossing every side of the triangle twice.
TEST(Decompose, SevenPieces) {
  const Conic c(P::quadratic(-1, 0, -1, 0, -1, 2.31));
  const Triangle t({-2, -2}, {2, -2}, {0, 3});
  const auto trace = decompose(c, t);
  EXPECT_EQ(trace.pieces.size(), 7u);
  expect_tiles(t, trace.pieces, 36);
}

TEST(Decompose, DegenerateConicRejected) {
  EXPECT_THROW(decompose(Conic(P::quadratic(0, 1, 0, 0, 0, 0)), Triangle({0, 0}, {1, 0}, {0, 1})), InvalidArgument);
}

void decompose_battery(ConicClass cls, std::uint64_t seed) {
  tools::InstanceGenerator gen(seed);
  for (int k = 0; k < 200; ++k) {
    const auto in = gen.make(cls);
    const Conic c(in.f);
    if (c.type() != cls) continue;
    const auto trace = decompose(c, in.t);
    EXPECT_LE(trace.pieces.size(), 11u);
    EXPECT_EQ(census(c, trace.pieces).free, static_cast<int>(trace.pieces.size()));
    EXPECT_NEAR(area_sum(trace.pieces), in.t.area(), 1e-12 * in.t.area());
  }
}

TEST(Decompose, RandomEllipses) { decompose_battery(ConicClass::Ellipse, 41); }
TEST(Decompose, RandomParabolas) { decompose_battery(ConicClass::Parabola, 42); }
TEST(Decompose, RandomHyperbolas) { decompose_battery(ConicClass::Hyperbola, 43); }

}  // namespace
}  // namespace conicquad
