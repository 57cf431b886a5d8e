#include "battery.hpp"

#include <gmpxx.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <map>
#include <numbers>
#include <sstream>

#include "conicquad/engine.hpp"
#include "conicquad/errors.hpp"
#include "conicquad/oracle.hpp"
#include "conicquad/subdivide.hpp"
#include "instances.hpp"
#include "job.hpp"

namespace conicquad::tools {

namespace {

constexpr ConicClass kAllClasses[] = {
    ConicClass::Ellipse,    ConicClass::Parabola, ConicClass::Hyperbola, ConicClass::CrossingLines,
    ConicClass::ParallelLines, ConicClass::DoubleLine, ConicClass::SingleLine, ConicClass::Point,
    ConicClass::Empty,      ConicClass::ConstantSign,
};
constexpr ConicClass kCurveClasses[] = {ConicClass::Ellipse, ConicClass::Parabola, ConicClass::Hyperbola};

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2e", v);
  return buf;
}

// Tracks the worst observed ratio error / allowed; pass iff it stays <= 1.
struct Worst {
  double ratio = 0.0;
  double error = 0.0;
  std::string where;
  int failures = 0;

  void see(double error_value, double allowed, const std::string& label) {
    const double r = allowed > 0.0 ? error_value / allowed : (error_value > 0.0 ? INFINITY : 0.0);
    if (!(r <= 1.0)) ++failures;
    if (!(r <= ratio)) {
      ratio = r;
      error = error_value;
      where = label;
    }
  }
  void fail(const std::string& label) {
    ++failures;
    ratio = INFINITY;
    where = label;
  }
  std::string summary() const {
    std::string s = std::to_string(failures) + " failing";
    if (!where.empty()) s += ", worst " + sci(error) + " (" + sci(ratio) + " of allowed) at " + where;
    return s;
  }
};

// Region integrals plus their operand scale max(|I(f)|, |I(-f)|): the
// magnitude that rounding in a region integral is relative to.
struct Split {
  double inside = 0.0;
  double outside = 0.0;
  double scale() const { return std::max(std::abs(inside), std::abs(outside)); }
};

Split split(const Polynomial2& g, const Polynomial2& f, const Triangle& t, const Tolerances& tol) {
  return {integrate_region(g, f, t, tol).value, integrate_region(g, -f, t, tol).value};
}

std::string label(ConicClass c, int k) { return std::string(to_string(c)) + "#" + std::to_string(k); }

// ---------------------------------------------------------------------------

constexpr double kMonomialUlps = 1.0;
constexpr double kRationalRel = 1e-15;
constexpr int kRandomQuartics = 1000;

std::string exactness(const Tolerances&, bool& pass) {
  Worst mono;
  for (int i = 0; i <= 4; ++i)
    for (int j = 0; i + j <= 4; ++j) {
      Polynomial2 g;
      g.set(i, j, 1.0);
      const double exact = 1.0 / ((j + 1) * (i + j + 2));
      mono.see(std::abs(reference_triangle_integral(g) - exact),
               kMonomialUlps * std::numeric_limits<double>::epsilon() * exact,
               "x^" + std::to_string(i) + " y^" + std::to_string(j));
    }

  InstanceGenerator gen(1001);
  Worst rnd;
  for (int k = 0; k < kRandomQuartics; ++k) {
    Polynomial2 g;
    mpq_class exact = 0;
    for (int i = 0; i <= 4; ++i)
      for (int j = 0; i + j <= 4; ++j) {
        const double b = gen.uniform(-1.0, 1.0);
        g.set(i, j, b);
        exact += mpq_class(b) / ((j + 1) * (i + j + 2));
      }
    const double e = exact.get_d();
    rnd.see(std::abs(reference_triangle_integral(g) - e), kRationalRel * std::abs(e), "quartic#" + std::to_string(k));
  }
  pass = mono.failures == 0 && rnd.failures == 0;
  return "monomials: " + mono.summary() + "; random quartics vs rationals: " + rnd.summary();
}

// ---------------------------------------------------------------------------

constexpr double kAnalyticTol = 1e-10;
constexpr double kAnnulusTol = 1e-9;

const char* kDiscJob = R"({"triangle": [[-3,-3],[3,-3],[0,4]],
  "f": {"a20": -1, "a02": -1, "a00": 1}, "g": [[0,0,1]]})";
const char* kHalfDiscJob = R"({"triangle": [[-2,0],[2,0],[0,2]],
  "f": {"a20": -1, "a02": -1, "a00": 1}, "g": [[0,0,1]]})";
const char* kSegmentJob = R"({"triangle": [[1,0],[0,1],[1,1]],
  "f": {"a20": -1, "a02": -1, "a00": 1}, "g": [[0,0,1]]})";
const char* kAnnulusJob = R"({"triangle": [[-5,-5],[5,-5],[0,7]],
  "band": {"p": {"a20": 1, "a02": 1}, "alpha": 1, "fa": -4, "fb": -1}, "g": [[0,0,1]]})";

std::string analytic(const Tolerances& tol, bool& pass) {
  using std::numbers::pi;
  Worst w;
  const auto region = [&](const char* text, double truth, const char* name) {
    const Job job = parse_job(text);
    const double v = integrate_region(job.integrand(), job.region(), job.tri(), tol).value;
    w.see(std::abs(v - truth), kAnalyticTol, name);
  };
  region(kDiscJob, pi, "disc");
  region(kHalfDiscJob, pi / 2, "half-disc");
  region(kSegmentJob, pi / 4 - 0.5, "circular segment");
  const Job annulus = parse_job(kAnnulusJob);
  w.see(std::abs(integrate_band(annulus.integrand(), annulus.band_spec(), annulus.tri(), tol) - 3 * pi), kAnnulusTol,
        "annulus");
  pass = w.failures == 0;
  return w.summary();
}

// ---------------------------------------------------------------------------

constexpr double kComplementRel = 1e-10;
constexpr int kComplementPerClass = 50;

std::string complement(const Tolerances& tol, bool& pass) {
  InstanceGenerator gen(2002);
  Worst w;
  for (const auto cls : kAllClasses)
    for (int k = 0; k < kComplementPerClass; ++k) {
      const auto in = gen.make(cls);
      try {
        const Split s = split(in.g, in.f, in.t, tol);
        const double whole = triangle_integral(in.g, in.t);
        w.see(std::abs(s.inside + s.outside - whole), kComplementRel * std::max(s.scale(), std::abs(whole)),
              label(cls, k));
      } catch (const Error& e) {
        w.fail(label(cls, k) + ": " + e.what());
      }
    }
  pass = w.failures == 0;
  return std::to_string(kComplementPerClass * 10) + " instances, " + w.summary();
}

// ---------------------------------------------------------------------------

constexpr double kOracleRel = 1e-7;
constexpr double kOracleTol = 1e-8;
constexpr double kOracleSlack = 1e-9;
constexpr int kOracleInstances = 200;

std::string oracle(const Tolerances& tol, bool& pass) {
  InstanceGenerator gen(3003);
  Worst w;
  for (int k = 0; k < kOracleInstances; ++k) {
    const auto cls = kCurveClasses[k % 3];
    const auto in = gen.make(cls);
    try {
      const double e = integrate_region(in.g, in.f, in.t, tol).value;
      const auto o = oracle_integrate(in.g, in.f, in.t, kOracleTol);
      w.see(std::abs(e - o.value), std::max(kOracleRel * std::abs(o.value), o.error_bound + kOracleSlack),
            label(cls, k));
    } catch (const Error& e) {
      w.fail(label(cls, k) + ": " + e.what());
    }
  }
  pass = w.failures == 0;
  return std::to_string(kOracleInstances) + " instances, " + w.summary();
}

// ---------------------------------------------------------------------------

constexpr std::size_t kMaxPieces = 11;
constexpr double kAreaDefectRel = 1e-12;
constexpr int kSubdivisionInstances = 300;

bool on_side(const Triangle& t, const Segment& s) {
  const double eps = 1e-12 * t.diameter();
  for (int i = 0; i < 3; ++i) {
    const Segment side = t.side(i);
    const Vec2 d = side.b - side.a;
    const double len = norm(d);
    if (std::abs(cross(d, s.a - side.a)) <= eps * len && std::abs(cross(d, s.b - side.a)) <= eps * len) return true;
  }
  return false;
}

std::string subdivision(const Tolerances& tol, bool& pass) {
  InstanceGenerator gen(4004);
  int too_many = 0, not_free = 0, edges_bad = 0, errors = 0;
  std::size_t most = 0;
  Worst area;
  std::string first;
  const auto note = [&](const std::string& s) {
    if (first.empty()) first = s;
  };
  for (int k = 0; k < kSubdivisionInstances; ++k) {
    const auto cls = kCurveClasses[k % 3];
    const auto in = gen.make(cls);
    const Conic c(in.f, tol);
    if (!is_nondegenerate(c.type())) {
      ++errors;
      note(label(cls, k) + " classified as " + std::string(to_string(c.type())));
      continue;
    }
    try {
      const auto trace = decompose(c, in.t);
      most = std::max(most, trace.pieces.size());
      if (trace.pieces.size() > kMaxPieces) {
        ++too_many;
        note(label(cls, k) + ": " + std::to_string(trace.pieces.size()) + " pieces");
      }
      double sum = 0.0;
      for (const auto& p : trace.pieces) {
        sum += p.tri.area();
        if (triangle_freedom(c, p).kind != FreeStatus::Kind::Free) {
          ++not_free;
          note(label(cls, k) + ": piece not free");
        }
        for (int i = 0; i < 3; ++i) {
          const Segment e = p.tri.side(i);
          if (!on_side(in.t, e) && !segment_is_free(c, e)) {
            ++edges_bad;
            note(label(cls, k) + ": internal edge not free");
          }
        }
      }
      area.see(std::abs(sum - in.t.area()), kAreaDefectRel * in.t.area(), label(cls, k));
    } catch (const Error& e) {
      ++errors;
      note(label(cls, k) + ": " + e.what());
    }
  }
  pass = too_many == 0 && not_free == 0 && edges_bad == 0 && errors == 0 && area.failures == 0;
  std::string s = std::to_string(kSubdivisionInstances) + " instances, max " + std::to_string(most) +
                  " pieces; over 11: " + std::to_string(too_many) + ", non-free pieces: " + std::to_string(not_free) +
                  ", non-free internal edges: " + std::to_string(edges_bad) + ", errors: " + std::to_string(errors) +
                  "; area defect " + area.summary();
  if (!first.empty()) s += "; first problem: " + first;
  return s;
}

// ---------------------------------------------------------------------------

constexpr double kEquivarianceRel = 1e-9;
constexpr int kEquivarianceInstances = 100;
constexpr int kMotionsPerInstance = 5;

std::string equivariance(const Tolerances& tol, bool& pass) {
  InstanceGenerator gen(5005);
  Worst w;
  for (int k = 0; k < kEquivarianceInstances; ++k) {
    const auto cls = kAllClasses[k % 10];
    const auto in = gen.make(cls);
    try {
      const Split base = split(in.g, in.f, in.t, tol);
      for (int m = 0; m < kMotionsPerInstance; ++m) {
        const AffineMap2 motion = gen.rigid_motion();
        const AffineMap2 back = motion.inverse();
        const Triangle t(motion(in.t[0]), motion(in.t[1]), motion(in.t[2]));
        const double moved =
            integrate_region(poly_compose_affine(in.g, back), poly_compose_affine(in.f, back), t, tol).value;
        w.see(std::abs(moved - base.inside), kEquivarianceRel * base.scale(), label(cls, k) + "/" + std::to_string(m));
      }
    } catch (const Error& e) {
      w.fail(label(cls, k) + ": " + e.what());
    }
  }
  pass = w.failures == 0;
  return std::to_string(kEquivarianceInstances) + " instances x " + std::to_string(kMotionsPerInstance) + " motions, " +
         w.summary();
}

// ---------------------------------------------------------------------------

constexpr double kDegenerateRel = 1e-8;
constexpr double kDegenerateOracleRel = 1e-10;

struct Layout {
  const char* name;
  std::array<Vec2, 3> v;  // in units where the lines are x = 0, x = 12 or x = 0, y = 0
};

// Strips x(x - 12) = 0: one line crossing, both crossing, one vertex per region.
constexpr Layout kStrips[] = {
    {"strip/one line", {{{-8, 15}, {8, 5}, {10, 25}}}},
    {"strip/both lines", {{{-8, 10}, {15, 5}, {18, 25}}}},
    {"strip/three regions", {{{-8, 10}, {8, 5}, {18, 25}}}},
};
// Crossing lines x y = 0: three regions (two arrangements), four regions (two arrangements).
constexpr Layout kCrossings[] = {
    {"cross/three quadrants", {{{-8, 10}, {8, 6}, {10, -6}}}},
    {"cross/opposite quadrants", {{{-4, -10}, {-6, -6}, {10, 5}}}},
    {"cross/center inside", {{{-11, 3}, {7, 5}, {4, -8}}}},
    {"cross/center inside, mirrored", {{{-2, -8}, {-9, -2}, {9, 7}}}},
};

std::string degenerate(const Tolerances& tol, bool& pass) {
  const double u = 1.0 / 12.0;
  // Quartic that changes sign over every layout.
  const Polynomial2 g{{0, 0, 0.7}, {1, 0, -0.4}, {0, 1, 0.3}, {2, 0, 0.25}, {1, 1, -0.5},
                      {0, 2, 0.15}, {3, 0, 0.1}, {1, 2, -0.2}, {2, 2, 0.05}, {0, 4, 0.08}};
  // Oblique frame: lines no longer axis-aligned nor perpendicular.
  const AffineMap2 shear({0.9, 0.35, -0.2, 1.1}, {0.3, -0.2});
  const AffineMap2 unshear = shear.inverse();

  Worst w;
  int count = 0;
  const auto run = [&](const Layout& lay, const Polynomial2& f0) {
    for (bool oblique : {false, true})
      for (double sign : {1.0, -1.0}) {
        std::array<Vec2, 3> v;
        for (std::size_t i = 0; i < 3; ++i) v[i] = lay.v[i] * u;
        Polynomial2 f = f0 * sign;
        if (oblique) {
          // f' = f o shear^-1 and t' = shear(t) describe the same configuration.
          f = poly_compose_affine(f, unshear);
          for (auto& p : v) p = shear(p);
        }
        const Triangle t(v[0], v[1], v[2]);
        const std::string name = std::string(lay.name) + (oblique ? " oblique" : "") + (sign > 0 ? " f" : " -f");
        ++count;
        try {
          const Split s = split(g, f, t, tol);
          const auto o = oracle_integrate(g, f, t, kDegenerateOracleRel * std::max(s.scale(), 1e-300));
          w.see(std::abs(s.inside - o.value), kDegenerateRel * s.scale(), name);
        } catch (const Error& e) {
          w.fail(name + ": " + e.what());
        }
      }
  };
  for (const auto& lay : kStrips) run(lay, Polynomial2::quadratic(1, 0, 0, -1, 0, 0));
  for (const auto& lay : kCrossings) run(lay, Polynomial2::quadratic(0, 1, 0, 0, 0, 0));
  pass = w.failures == 0;
  return std::to_string(count) + " instances, " + w.summary();
}

struct Criterion {
  std::function<std::string(const Tolerances&, bool&)> run;
  double budget_seconds;
};

const std::map<std::string, Criterion>& criteria() {
  static const std::map<std::string, Criterion> table = {
      {"exactness", {exactness, 1.0}},       {"analytic", {analytic, 1.0}},
      {"complement", {complement, 30.0}},    {"oracle", {oracle, 300.0}},
      {"subdivision", {subdivision, 30.0}},  {"equivariance", {equivariance, 60.0}},
      {"degenerate", {degenerate, 10.0}},
  };
  return table;
}

}  // namespace

const std::vector<std::string>& criterion_ids() {
  static const std::vector<std::string> ids = {"exactness",   "analytic",     "complement", "oracle",
                                               "subdivision", "equivariance", "degenerate"};
  return ids;
}

CriterionResult run_criterion(const std::string& id, const Tolerances& tol) {
  const auto it = criteria().find(id);
  if (it == criteria().end()) throw InvalidArgument("unknown criterion '" + id + "'");
  CriterionResult r{id, false, 0.0, {}};
  const auto start = std::chrono::steady_clock::now();
  try {
    r.detail = it->second.run(tol, r.pass);
  } catch (const std::exception& e) {
    r.pass = false;
    r.detail = std::string("aborted: ") + e.what();
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (r.seconds > it->second.budget_seconds) {
    r.pass = false;
    r.detail += "; over time budget of " + sci(it->second.budget_seconds) + " s";
  }
  return r;
}

}  // namespace conicquad::tools
