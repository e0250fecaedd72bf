#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace eventqa {

/// Command-line entry point. Data goes to `out`, diagnostics to `err`.
/// Returns 0 on success, 1 on a usage or validation error, 2 on a data error.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace eventqa
