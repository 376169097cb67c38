#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace learnsim {

/// Command-line entry point. Exit codes: 0 success, 1 validation or usage
/// error, 2 I/O error. Diagnostics go to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace learnsim
