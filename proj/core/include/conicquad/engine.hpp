#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "conicquad/basecase.hpp"
#include "conicquad/conic.hpp"
#include "conicquad/polynomial.hpp"
#include "conicquad/subdivide.hpp"
#include "conicquad/tolerances.hpp"

namespace conicquad {

/// One term of the result: weight * value over tri.
struct PieceContribution {
  Triangle tri;
  std::string label;       // free case, or degenerate region kind
  std::string provenance;  // construction that produced tri
  std::string route;       // how value was obtained
  double weight = 1.0;
  double value = 0.0;
};

struct IntegralResult {
  double value = 0.0;
  ConicClass conic_class = ConicClass::ConstantSign;
  std::vector<PieceContribution> pieces;
  std::vector<std::string> warnings;
};

/// Integral of g (degree <= 4) over t intersected with {f >= 0} (f degree <= 2).
/// Throws SubdivisionFailure if the decomposition cannot be certified.
IntegralResult integrate_region(const Polynomial2& g, const Polynomial2& f, const Triangle& t,
                                const Tolerances& tol = {});

/// Region {fa <= -p / alpha <= fb}.
struct BandSpec {
  Polynomial2 p{2};
  double alpha = 1.0;
  double fa = 0.0;
  double fb = 0.0;
};

/// Integral of v over t intersected with the band, by inclusion-exclusion of
/// the two one-sided regions.
double integrate_band(const Polynomial2& v, const BandSpec& band, const Triangle& t, const Tolerances& tol = {});

/// phi1 * phi2 for two quadratics.
Polynomial2 projection_integrand(const Polynomial2& phi1, const Polynomial2& phi2);

}  // namespace conicquad
