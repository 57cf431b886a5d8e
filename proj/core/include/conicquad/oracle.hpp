#pragma once

#include <cstddef>

#include "conicquad/geometry.hpp"
#include "conicquad/polynomial.hpp"

namespace conicquad {

struct OracleEstimate {
  double value = 0.0;
  double error_bound = 0.0;  // |value - exact| <= error_bound, up to rounding
  std::size_t cells_used = 0;
};

/// Adaptive longest-edge bisection of t. Cells on which f has constant sign
/// are integrated exactly; cells cut by {f = 0} use the linearization of f
/// at the cell centroid and carry a rigorous bound on the region mismatch.
/// Refinement stops when the total bound is at most tol (absolute) or every
/// open cell has reached depth 40.
OracleEstimate oracle_integrate(const Polynomial2& g, const Polynomial2& f, const Triangle& t, double tol);

}  // namespace conicquad
