#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace rcurves::cli {

/// Exit codes: 0 success, 1 internal error, 2 input or usage error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace rcurves::cli
