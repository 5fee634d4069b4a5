#pragma once

#include <stdexcept>
#include <string>

namespace fgr {

/// Raised on contract violations of library operations (bad input, violated
/// preconditions). Carries a human readable report.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace fgr
