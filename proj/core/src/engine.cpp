#include "conicquad/engine.hpp"

#include <cmath>
#include <sstream>

#include "conicquad/errors.hpp"

namespace conicquad {

namespace {

constexpr double kDifferenceRatio = 1e3;
constexpr double kMarginFloor = 10.0;

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(3);
  os << v;
  return os.str();
}

void check_difference(IntegralResult& r, double operand_scale, double value, std::string_view where) {
  if (operand_scale > kDifferenceRatio * std::abs(value))
    r.warnings.push_back(std::string(where) + ": complement difference with operands " + fmt(operand_scale) +
                         " for result " + fmt(value));
}

}  // namespace

IntegralResult integrate_region(const Polynomial2& g, const Polynomial2& f, const Triangle& t, const Tolerances& tol) {
  if (f.degree() > 2) throw DegreeOverflow("region polynomial must have degree <= 2");
  const Conic c(f, tol);
  IntegralResult r;
  r.conic_class = c.type();
  if (c.margin() < kMarginFloor)
    r.warnings.push_back(std::string("classification margin ") + fmt(c.margin()) + " for " +
                         std::string(to_string(c.type())));

  if (!is_nondegenerate(c.type())) {
    const auto d = degenerate_integral(g, c, t);
    for (const auto& p : d.pieces)
      r.pieces.push_back({p.tri, std::string(p.label), "Degenerate", "clip", p.weight, p.value});
    r.value = d.value;
    check_difference(r, d.operand_scale, d.value, to_string(c.type()));
    return r;
  }

  const auto trace = decompose(c, t);
  for (const auto& piece : trace.pieces) {
    const auto b = integrate_free_triangle(g, c, piece);
    r.pieces.push_back({piece.tri, std::string(to_string(piece.free_case)), std::string(to_string(piece.provenance)),
                        std::string(b.route), 1.0, b.value});
    r.value += b.value;
    check_difference(r, b.operand_scale, b.value, to_string(piece.free_case));
  }
  return r;
}

double integrate_band(const Polynomial2& v, const BandSpec& band, const Triangle& t, const Tolerances& tol) {
  if (!(band.alpha > 0.0)) throw InvalidArgument("band: alpha must be positive");
  if (band.fa > band.fb) throw InvalidArgument("band: fa must not exceed fb");
  if (band.p.degree() > 2) throw DegreeOverflow("band: p must have degree <= 2");
  const Polynomial2 scaled = band.p.with_cap(2) * (1.0 / band.alpha);
  // {f1 >= 0} and {f2 >= 0} cover t, their intersection is the band.
  const Polynomial2 f1 = -scaled - Polynomial2::constant(band.fa, 2);
  const Polynomial2 f2 = scaled + Polynomial2::constant(band.fb, 2);
  const double i1 = integrate_region(v, f1, t, tol).value;
  const double i2 = integrate_region(v, f2, t, tol).value;
  return i1 + i2 - triangle_integral(v, t);
}

Polynomial2 projection_integrand(const Polynomial2& phi1, const Polynomial2& phi2) { return poly_mul(phi1, phi2); }

}  // namespace conicquad
