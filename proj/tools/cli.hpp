#pragma once

#include <string>
#include <vector>

namespace traceq::cli {

/// Runs one CLI invocation. Exit codes: 0 affirmative/success, 1 negative
/// verdict (no match, unsatisfiable, not contained, not equivalent, no
/// descriptive query), 2 usage or input error.
int run(const std::vector<std::string>& args);

}  // namespace traceq::cli
