#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace nbcqi {

/// Exit codes: 0 success, 1 validation/assumption failure, 2 parse error,
/// 3 unsupported eigenvalue or undecided comparison.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace nbcqi
