#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace phasebound::cli {

/// Parses and runs one tool invocation. Reports go to `out`, diagnostics to
/// `err`. Returns the process exit code: 0 on success, 1 on numerical
/// failure, 2 on validation errors (unknown flags, bad parameters, malformed
/// state files).
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace phasebound::cli
