#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace chainlattice::cli {

inline constexpr const char* kVersion = "0.1.0";

/// Exit codes: 0 success, 1 verification failure or infeasible construction,
/// 2 usage or input error, 3 resource limit.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace chainlattice::cli
