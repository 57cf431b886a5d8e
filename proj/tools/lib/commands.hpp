#pragma once

#include <iosfwd>
#include <string>

#include "conicquad/tolerances.hpp"

namespace conicquad::tools {

enum ExitCode : int { kOk = 0, kCheckFailed = 1, kInputError = 2, kInternalError = 3 };

/// Tolerances with overrides from a "name=value,name=value" list
/// (names: classify, segment_param, barycentric, on_conic). Throws JobError.
Tolerances parse_tolerance_overrides(const std::string& spec);

/// The command-line program. Returns the process exit code.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace conicquad::tools
