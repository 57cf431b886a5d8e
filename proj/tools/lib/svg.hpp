#pragma once

#include <string>

#include "conicquad/engine.hpp"
#include "conicquad/geometry.hpp"
#include "conicquad/polynomial.hpp"

namespace conicquad::tools {

/// SVG 1.1 drawing of a decomposition: pieces filled by label, the triangle
/// outline, and the zero set of f as clipped polylines. The view is the
/// triangle's bounding box plus a 10% margin. Output depends only on the
/// arguments.
std::string render_svg(const Triangle& t, const Polynomial2& f, const IntegralResult& result,
                       const Tolerances& tol = {});

}  // namespace conicquad::tools
