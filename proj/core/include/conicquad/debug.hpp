#pragma once

namespace conicquad::debug {

/// Fault injection for self-tests: while an instance is alive, lookups in the
/// trigonometric linearization table return perturbed coefficients.
class ScopedTrigTableCorruption {
 public:
  ScopedTrigTableCorruption();
  ~ScopedTrigTableCorruption();
  ScopedTrigTableCorruption(const ScopedTrigTableCorruption&) = delete;
  ScopedTrigTableCorruption& operator=(const ScopedTrigTableCorruption&) = delete;
};

bool trig_table_corrupted();

}  // namespace conicquad::debug
