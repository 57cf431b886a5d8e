#include <benchmark/benchmark.h>

#include "conicquad/conic.hpp"
#include "conicquad/engine.hpp"
#include "conicquad/oracle.hpp"
#include "conicquad/polynomial.hpp"
#include "conicquad/subdivide.hpp"

namespace {

using conicquad::ConicClass;
using conicquad::Polynomial2;
using conicquad::Triangle;

struct Region {
  const char* name;
  Polynomial2 f;
  Triangle t;
};

// Full quartic so every coefficient path is exercised.
Polynomial2 quartic() {
  Polynomial2 g;
  double v = 0.5;
  for (int i = 0; i <= 4; ++i)
    for (int j = 0; i + j <= 4; ++j) {
      g.set(i, j, v);
      v = -0.7 * v + 0.13;
    }
  return g;
}

const Region kRegions[] = {
    {"disc_inside", Polynomial2::quadratic(-1, 0, -1, 0, 0, 1), Triangle({-3, -3}, {3, -3}, {0, 4})},
    {"circle_seven_pieces", Polynomial2::quadratic(-1, 0, -1, 0, -1, 2.31), Triangle({-2, -2}, {2, -2}, {0, 3})},
    {"ellipse_chord", Polynomial2::quadratic(-1, 0.3, -2, 0.1, 0, 1), Triangle({-0.5, -1}, {2, 0.2}, {0, 1.5})},
    {"parabola", Polynomial2::quadratic(-1, 0, 0, 0, 1, 0), Triangle({-1.5, 0.2}, {1.5, 0.5}, {0.2, 3})},
    {"hyperbola", Polynomial2::quadratic(0, 1, 0, 0, 0, -0.25), Triangle({0.1, 0.1}, {2, 0.3}, {0.4, 2})},
    {"crossing_lines", Polynomial2::quadratic(0, 1, 0, 0, 0, 0), Triangle({-1, 3}, {-1, -1}, {3, -1})},
    {"parallel_lines", Polynomial2::quadratic(1, 0, 0, -1, 0, 0), Triangle({-1, 0}, {2, 0}, {-1, 3})},
};

void BM_ReferenceIntegral(benchmark::State& state) {
  const Polynomial2 g = quartic();
  for (auto _ : state) benchmark::DoNotOptimize(conicquad::reference_triangle_integral(g));
}
BENCHMARK(BM_ReferenceIntegral);

void BM_TriangleIntegral(benchmark::State& state) {
  const Polynomial2 g = quartic();
  const Triangle t({-0.3, 0.1}, {1.7, -0.4}, {0.5, 2.2});
  for (auto _ : state) benchmark::DoNotOptimize(conicquad::triangle_integral(g, t));
}
BENCHMARK(BM_TriangleIntegral);

void BM_Classify(benchmark::State& state) {
  const Polynomial2 f = Polynomial2::quadratic(-1, 0.3, -2, 0.1, 0, 1);
  for (auto _ : state) benchmark::DoNotOptimize(conicquad::Conic(f));
}
BENCHMARK(BM_Classify);

void BM_Decompose(benchmark::State& state) {
  const Region& r = kRegions[1];
  const conicquad::Conic c(r.f);
  for (auto _ : state) benchmark::DoNotOptimize(conicquad::decompose(c, r.t));
}
BENCHMARK(BM_Decompose);

void BM_IntegrateRegion(benchmark::State& state) {
  const Region& r = kRegions[static_cast<std::size_t>(state.range(0))];
  state.SetLabel(r.name);
  const Polynomial2 g = quartic();
  for (auto _ : state) benchmark::DoNotOptimize(conicquad::integrate_region(g, r.f, r.t));
}
BENCHMARK(BM_IntegrateRegion)->DenseRange(0, std::size(kRegions) - 1);

void BM_IntegrateBand(benchmark::State& state) {
  const conicquad::BandSpec band{Polynomial2::quadratic(1, 0, 1, 0, 0, 0), 1.0, -4.0, -1.0};
  const Triangle t({-5, -5}, {5, -5}, {0, 7});
  const Polynomial2 g = quartic();
  for (auto _ : state) benchmark::DoNotOptimize(conicquad::integrate_band(g, band, t));
}
BENCHMARK(BM_IntegrateBand);

// Reference point for the engine: the adaptive oracle on the same regions.
void BM_Oracle(benchmark::State& state) {
  const Region& r = kRegions[static_cast<std::size_t>(state.range(0))];
  const double tol = 1.0 / static_cast<double>(state.range(1));
  state.SetLabel(r.name);
  const Polynomial2 g = quartic();
  for (auto _ : state) benchmark::DoNotOptimize(conicquad::oracle_integrate(g, r.f, r.t, tol));
}
BENCHMARK(BM_Oracle)->Args({0, 1000000})->Args({2, 1000000})->Args({4, 1000000})->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
