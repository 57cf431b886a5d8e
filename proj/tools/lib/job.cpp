#include "job.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

namespace conicquad::tools {

namespace {

using json = nlohmann::ordered_json;

constexpr const char* kCoeffNames[] = {"a20", "a11", "a02", "a10", "a01", "a00"};

[[noreturn]] void fail(const std::string& field, const std::string& what) {
  throw JobError("field '" + field + "': " + what);
}

double number(const json& v, const std::string& field) {
  if (!v.is_number()) fail(field, "expected a number");
  const double d = v.get<double>();
  if (!std::isfinite(d)) fail(field, "must be finite");
  return d;
}

void only_keys(const json& obj, const std::string& field, std::initializer_list<const char*> keys) {
  const std::set<std::string> allowed(keys.begin(), keys.end());
  for (const auto& [k, _] : obj.items())
    if (!allowed.count(k)) fail(field.empty() ? k : field + "." + k, "unknown field");
}

QuadraticCoeffs quadratic(const json& v, const std::string& field) {
  if (!v.is_object()) fail(field, "expected an object with a20, a11, a02, a10, a01, a00");
  only_keys(v, field, {"a20", "a11", "a02", "a10", "a01", "a00"});
  std::array<double, 6> c{};
  for (std::size_t k = 0; k < 6; ++k) {
    const std::string name = kCoeffNames[k];
    if (v.contains(name)) c[k] = number(v.at(name), field + "." + name);
  }
  return {c[0], c[1], c[2], c[3], c[4], c[5]};
}

json quadratic_json(const QuadraticCoeffs& q) {
  return json{{"a20", q.a20}, {"a11", q.a11}, {"a02", q.a02}, {"a10", q.a10}, {"a01", q.a01}, {"a00", q.a00}};
}

// 1-based line and column of a byte offset.
std::string location(const std::string& text, std::size_t byte) {
  std::size_t line = 1;
  std::size_t col = 1;
  for (std::size_t k = 0; k < byte && k < text.size(); ++k) {
    if (text[k] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

}  // namespace

Triangle Job::tri() const {
  auto t = Triangle::make(triangle[0], triangle[1], triangle[2]);
  if (!t) throw JobError("field 'triangle': vertices are collinear");
  return *t;
}

Polynomial2 Job::integrand() const {
  if (g) {
    Polynomial2 p;
    for (const auto& term : *g) p.add(term.i, term.j, term.b);
    return p;
  }
  return poly_mul(phi1->polynomial(), phi2->polynomial());
}

Polynomial2 Job::region() const {
  if (f) return f->polynomial();
  const auto s = band_spec();
  return -(s.p * (1.0 / s.alpha)) - Polynomial2::constant(s.fa, 2);
}

BandSpec Job::band_spec() const {
  if (!band) throw JobError("job has no band");
  return {band->p.polynomial(), band->alpha, band->fa, band->fb};
}

Job parse_job(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw JobError("syntax error at " + location(text, e.byte) + ": " + e.what());
  }
  if (!doc.is_object()) throw JobError("job must be a JSON object");
  only_keys(doc, "", {"triangle", "f", "g", "phi1", "phi2", "band"});

  Job job;
  if (!doc.contains("triangle")) fail("triangle", "missing");
  const auto& tri = doc.at("triangle");
  if (!tri.is_array() || tri.size() != 3) fail("triangle", "expected three [x, y] pairs");
  for (std::size_t k = 0; k < 3; ++k) {
    const std::string field = "triangle[" + std::to_string(k) + "]";
    if (!tri[k].is_array() || tri[k].size() != 2) fail(field, "expected [x, y]");
    job.triangle[k] = {number(tri[k][0], field + "[0]"), number(tri[k][1], field + "[1]")};
  }
  if (!Triangle::make(job.triangle[0], job.triangle[1], job.triangle[2])) fail("triangle", "vertices are collinear");

  const bool has_f = doc.contains("f");
  const bool has_band = doc.contains("band");
  if (has_f == has_band) fail(has_f ? "band" : "f", "exactly one of 'f' and 'band' is required");
  if (has_f) job.f = quadratic(doc.at("f"), "f");
  if (has_band) {
    const auto& b = doc.at("band");
    if (!b.is_object()) fail("band", "expected an object");
    only_keys(b, "band", {"p", "alpha", "fa", "fb"});
    for (const char* k : {"p", "alpha", "fa", "fb"})
      if (!b.contains(k)) fail(std::string("band.") + k, "missing");
    BandCoeffs bc{quadratic(b.at("p"), "band.p"), number(b.at("alpha"), "band.alpha"), number(b.at("fa"), "band.fa"),
                  number(b.at("fb"), "band.fb")};
    if (!(bc.alpha > 0.0)) fail("band.alpha", "must be positive");
    if (bc.fa > bc.fb) fail("band.fa", "must not exceed band.fb");
    job.band = bc;
  }

  const bool has_g = doc.contains("g");
  const bool has_phi = doc.contains("phi1") || doc.contains("phi2");
  if (has_g == has_phi) fail("g", "exactly one of 'g' and 'phi1'/'phi2' is required");
  if (has_g) {
    const auto& g = doc.at("g");
    if (!g.is_array()) fail("g", "expected a list of [i, j, b]");
    std::vector<TermSpec> terms;
    for (std::size_t k = 0; k < g.size(); ++k) {
      const std::string field = "g[" + std::to_string(k) + "]";
      const auto& t = g[k];
      if (!t.is_array() || t.size() != 3) fail(field, "expected [i, j, b]");
      if (!t[0].is_number_integer() || !t[1].is_number_integer()) fail(field, "exponents must be integers");
      const int i = t[0].get<int>();
      const int j = t[1].get<int>();
      if (i < 0 || j < 0 || i + j > Polynomial2::kMaxDegree) fail(field, "need i, j >= 0 and i + j <= 4");
      terms.push_back({i, j, number(t[2], field + "[2]")});
    }
    job.g = terms;
  } else {
    if (!doc.contains("phi1") || !doc.contains("phi2")) fail("phi2", "'phi1' and 'phi2' must both be present");
    job.phi1 = quadratic(doc.at("phi1"), "phi1");
    job.phi2 = quadratic(doc.at("phi2"), "phi2");
  }
  return job;
}

Job load_job(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw JobError("cannot open job file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_job(ss.str());
}

std::string dump_job(const Job& job) {
  json doc;
  doc["triangle"] = json::array();
  for (const auto& v : job.triangle) doc["triangle"].push_back({v.x, v.y});
  if (job.f) doc["f"] = quadratic_json(*job.f);
  if (job.band)
    doc["band"] = {{"p", quadratic_json(job.band->p)}, {"alpha", job.band->alpha}, {"fa", job.band->fa}, {"fb", job.band->fb}};
  if (job.g) {
    doc["g"] = json::array();
    for (const auto& t : *job.g) doc["g"].push_back({t.i, t.j, t.b});
  }
  if (job.phi1) doc["phi1"] = quadratic_json(*job.phi1);
  if (job.phi2) doc["phi2"] = quadratic_json(*job.phi2);
  return doc.dump(2) + "\n";
}

}  // namespace conicquad::tools
