#pragma once

namespace conicquad {

// Thresholds used by the geometric predicates. All are relative.
struct Tolerances {
  // Determinant invariants below this (normalized) value classify as degenerate.
  double classify = 1e-10;
  // Root merging and vertex snapping in segment parameter space.
  double segment_param = 1e-9;
  // Border width of the barycentric point-in-triangle test.
  double barycentric = 1e-12;
  // |f(p)| <= on_conic * (magnitude of f's terms at p) means p is on the conic.
  double on_conic = 1e-9;
};

}  // namespace conicquad
