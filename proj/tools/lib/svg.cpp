#include "svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <optional>
#include <vector>

#include "conicquad/conic.hpp"

namespace conicquad::tools {

namespace {

constexpr double kCanvasWidth = 800.0;
constexpr double kMargin = 0.10;
constexpr int kInitialIntervals = 32;
constexpr int kMaxRefine = 14;
// Chord sagitta, as a fraction of the view diagonal, below which sampling stops.
constexpr double kFlatness = 2e-4;

struct View {
  double x0, y0, x1, y1;  // world box
  double scale;           // canvas units per world unit

  Vec2 canvas(Vec2 p) const { return {(p.x - x0) * scale, (y1 - p.y) * scale}; }
  double width() const { return (x1 - x0) * scale; }
  double height() const { return (y1 - y0) * scale; }
  double diagonal() const { return std::hypot(x1 - x0, y1 - y0); }
};

View fit(const Triangle& t) {
  double x0 = t[0].x, x1 = t[0].x, y0 = t[0].y, y1 = t[0].y;
  for (int i = 1; i < 3; ++i) {
    x0 = std::min(x0, t[i].x);
    x1 = std::max(x1, t[i].x);
    y0 = std::min(y0, t[i].y);
    y1 = std::max(y1, t[i].y);
  }
  const double mx = kMargin * (x1 - x0);
  const double my = kMargin * (y1 - y0);
  View v{x0 - mx, y0 - my, x1 + mx, y1 + my, 0.0};
  v.scale = kCanvasWidth / (v.x1 - v.x0);
  return v;
}

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  std::string s(buf);
  if (s == "-0.000") s = "0.000";
  return s;
}

std::string point(const View& view, Vec2 p) {
  const Vec2 c = view.canvas(p);
  return num(c.x) + "," + num(c.y);
}

const char* fill_for(const std::string& label) {
  static const std::map<std::string, const char*> colors = {
      {"NoContact", "#cfe3f7"},  {"BoundaryTouch", "#d5efcf"}, {"OneVertex", "#fbe7b5"},
      {"TwoVertices", "#f6cccc"}, {"ThreeVertices", "#e2d3f3"},
  };
  const auto it = colors.find(label);
  return it == colors.end() ? "#e6e6e6" : it->second;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char ch : s) {
    switch (ch) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += ch;
    }
  }
  return out;
}

// Liang-Barsky: the part of ab inside the view box, as parameters.
std::optional<std::pair<double, double>> clip(const View& v, Vec2 a, Vec2 b) {
  double t0 = 0.0, t1 = 1.0;
  const Vec2 d = b - a;
  const double p[4] = {-d.x, d.x, -d.y, d.y};
  const double q[4] = {a.x - v.x0, v.x1 - a.x, a.y - v.y0, v.y1 - a.y};
  for (int k = 0; k < 4; ++k) {
    if (p[k] == 0.0) {
      if (q[k] < 0.0) return std::nullopt;
      continue;
    }
    const double r = q[k] / p[k];
    if (p[k] < 0.0) t0 = std::max(t0, r);
    else t1 = std::min(t1, r);
  }
  if (t0 > t1) return std::nullopt;
  return std::make_pair(t0, t1);
}

using Curve = std::function<Vec2(double)>;

// Samples curve on [lo, hi], refining where a chord strays from the curve,
// and appends the visible runs to `runs`.
void sample(const View& view, const Curve& curve, double lo, double hi, std::vector<std::vector<Vec2>>& runs) {
  const double flat = kFlatness * view.diagonal();
  std::vector<Vec2> pts;
  std::function<void(double, Vec2, double, Vec2, int)> refine = [&](double ta, Vec2 a, double tb, Vec2 b, int depth) {
    const double tm = 0.5 * (ta + tb);
    const Vec2 m = curve(tm);
    const Vec2 chord = b - a;
    const double len = norm(chord);
    const double dev = len > 0.0 ? std::abs(cross(chord, m - a)) / len : norm(m - a);
    if (depth < kMaxRefine && dev > flat) {
      refine(ta, a, tm, m, depth + 1);
      refine(tm, m, tb, b, depth + 1);
    } else {
      pts.push_back(b);
    }
  };
  Vec2 prev = curve(lo);
  pts.push_back(prev);
  for (int k = 1; k <= kInitialIntervals; ++k) {
    const double ta = lo + (hi - lo) * (k - 1) / kInitialIntervals;
    const double tb = lo + (hi - lo) * k / kInitialIntervals;
    const Vec2 b = curve(tb);
    refine(ta, prev, tb, b, 0);
    prev = b;
  }

  std::vector<Vec2> run;
  for (std::size_t k = 0; k + 1 < pts.size(); ++k) {
    const auto c = clip(view, pts[k], pts[k + 1]);
    if (!c) {
      if (run.size() > 1) runs.push_back(run);
      run.clear();
      continue;
    }
    const Vec2 a = lerp(pts[k], pts[k + 1], c->first);
    const Vec2 b = lerp(pts[k], pts[k + 1], c->second);
    if (run.empty() || c->first > 0.0) {
      if (run.size() > 1) runs.push_back(run);
      run = {a};
    }
    run.push_back(b);
    if (c->second < 1.0) {
      runs.push_back(run);
      run.clear();
    }
  }
  if (run.size() > 1) runs.push_back(run);
}

// Box of the view in standard coordinates.
struct Box {
  double x0, x1, y0, y1;
};

Box standard_box(const View& view, const AffineMap2& to_std) {
  const Vec2 corners[4] = {{view.x0, view.y0}, {view.x1, view.y0}, {view.x1, view.y1}, {view.x0, view.y1}};
  Box b{INFINITY, -INFINITY, INFINITY, -INFINITY};
  for (const auto& c : corners) {
    const Vec2 s = to_std(c);
    b.x0 = std::min(b.x0, s.x);
    b.x1 = std::max(b.x1, s.x);
    b.y0 = std::min(b.y0, s.y);
    b.y1 = std::max(b.y1, s.y);
  }
  return b;
}

std::vector<std::vector<Vec2>> conic_runs(const View& view, const Conic& c) {
  std::vector<std::vector<Vec2>> runs;
  if (!c.has_frame()) return runs;
  const AffineMap2 from = c.from_standard();
  const Box box = standard_box(view, c.to_standard());
  const auto& p = c.params();
  const auto world = [&](auto fn) { return Curve([from, fn](double t) { return from(fn(t)); }); };
  // Vertical line x = x0 in standard coordinates.
  const auto vline = [&](double x0) {
    sample(view, world([x0](double t) { return Vec2{x0, t}; }), box.y0, box.y1, runs);
  };

  switch (c.type()) {
    case ConicClass::Ellipse:
      sample(view, world([a = p.a, b = p.b](double t) { return Vec2{a * std::cos(t), b * std::sin(t)}; }), 0.0,
             2.0 * M_PI, runs);
      break;
    case ConicClass::Parabola:
      sample(view, world([k = p.c](double t) { return Vec2{t, k * t * t}; }), box.x0, box.x1, runs);
      break;
    case ConicClass::Hyperbola: {
      // x y = k; |x| ranges over what keeps both coordinates in the box.
      const double hi = std::max(std::abs(box.x0), std::abs(box.x1));
      const double ymax = std::max(std::abs(box.y0), std::abs(box.y1));
      const double lo = ymax > 0.0 ? std::abs(p.k) / ymax : hi;
      if (lo < hi) {
        for (double sign : {1.0, -1.0})
          sample(view, world([sign, k = p.k](double u) {
                   const double x = sign * std::exp(u);
                   return Vec2{x, k / x};
                 }),
                 std::log(lo), std::log(hi), runs);
      }
      break;
    }
    case ConicClass::CrossingLines:
      sample(view, world([](double t) { return Vec2{t, 0.0}; }), box.x0, box.x1, runs);
      vline(0.0);
      break;
    case ConicClass::ParallelLines:
      vline(0.0);
      vline(p.d);
      break;
    case ConicClass::DoubleLine:
    case ConicClass::SingleLine:
      vline(0.0);
      break;
    default:
      break;
  }
  return runs;
}

}  // namespace

std::string render_svg(const Triangle& t, const Polynomial2& f, const IntegralResult& result, const Tolerances& tol) {
  const View view = fit(t);
  const Conic conic(f, tol);
  const double stroke = 0.0025 * kCanvasWidth;
  const double font = 0.022 * kCanvasWidth;

  std::string s;
  s += "<?xml version=\"1.0\" encoding=\"UTF-8\" standalone=\"no\"?>\n";
  s += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" + num(view.width()) + "\" height=\"" +
       num(view.height()) + "\" viewBox=\"0 0 " + num(view.width()) + " " + num(view.height()) + "\">\n";
  s += "  <title>" + std::string(to_string(result.conic_class)) + ", " + std::to_string(result.pieces.size()) +
       " pieces</title>\n";
  s += "  <rect x=\"0\" y=\"0\" width=\"" + num(view.width()) + "\" height=\"" + num(view.height()) +
       "\" fill=\"#ffffff\"/>\n";

  s += "  <g id=\"pieces\" stroke=\"#555555\" stroke-width=\"" + num(0.5 * stroke) + "\">\n";
  for (std::size_t k = 0; k < result.pieces.size(); ++k) {
    const auto& pc = result.pieces[k];
    s += "    <polygon id=\"piece-" + std::to_string(k) + "\" points=\"" + point(view, pc.tri[0]) + " " +
         point(view, pc.tri[1]) + " " + point(view, pc.tri[2]) + "\" fill=\"" + fill_for(pc.label) + "\"";
    if (pc.weight < 0.0) s += " fill-opacity=\"0.55\" stroke-dasharray=\"" + num(2.0 * stroke) + "\"";
    s += "><title>" + escape(pc.label) + " / " + escape(pc.provenance) + " / " + escape(pc.route) +
         "</title></polygon>\n";
  }
  s += "  </g>\n";

  s += "  <polygon id=\"triangle\" points=\"" + point(view, t[0]) + " " + point(view, t[1]) + " " + point(view, t[2]) +
       "\" fill=\"none\" stroke=\"#000000\" stroke-width=\"" + num(stroke) + "\"/>\n";

  s += "  <g id=\"conic\" fill=\"none\" stroke=\"#c0392b\" stroke-width=\"" + num(stroke) + "\">\n";
  for (const auto& run : conic_runs(view, conic)) {
    s += "    <polyline points=\"";
    for (std::size_t k = 0; k < run.size(); ++k) s += (k ? " " : "") + point(view, run[k]);
    s += "\"/>\n";
  }
  if (conic.type() == ConicClass::Point) {
    const Vec2 c = view.canvas(conic.params().center);
    s += "    <circle cx=\"" + num(c.x) + "\" cy=\"" + num(c.y) + "\" r=\"" + num(2.0 * stroke) +
         "\" fill=\"#c0392b\"/>\n";
  }
  s += "  </g>\n";

  s += "  <g id=\"labels\" font-family=\"sans-serif\" font-size=\"" + num(font) +
       "\" text-anchor=\"middle\" fill=\"#222222\">\n";
  for (std::size_t k = 0; k < result.pieces.size(); ++k) {
    const auto& pc = result.pieces[k];
    const Vec2 c = view.canvas(pc.tri.centroid());
    std::string text = std::to_string(k) + " " + pc.label;
    if (pc.weight != 1.0) text += " (" + num(pc.weight) + ")";
    s += "    <text x=\"" + num(c.x) + "\" y=\"" + num(c.y) + "\">" + escape(text) + "</text>\n";
  }
  s += "  </g>\n";
  s += "</svg>\n";
  return s;
}

}  // namespace conicquad::tools
