#pragma once

#include <string>
#include <vector>

#include "conicquad/tolerances.hpp"

namespace conicquad::tools {

struct CriterionResult {
  std::string id;
  bool pass = false;
  double seconds = 0.0;
  std::string detail;
};

/// Identifiers of the battery criteria, in run order.
const std::vector<std::string>& criterion_ids();

/// Runs one criterion. Thresholds, instance counts, seeds and time budgets are
/// fixed in the implementation; a criterion that exceeds its budget fails.
CriterionResult run_criterion(const std::string& id, const Tolerances& tol = {});

}  // namespace conicquad::tools
