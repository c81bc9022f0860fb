#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace hsm {

/// Runs the command line (without the program name). Returns the process
/// exit code: 0 on success, 1 for runtime failures, 2 for usage errors.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hsm
