#pragma once

// Command-line front end: one subcommand per library operation.

#include <ostream>
#include <string>
#include <vector>

namespace fgr {

/// Exit codes: 0 success or Positive, 1 Negative (or "not a member"),
/// 2 Inconclusive, 64 usage or parse error, 65 domain error.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace fgr
