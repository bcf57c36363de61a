#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace bjcomp {

/// Runs one CLI invocation. `args` holds the arguments after the program
/// name. Returns the process exit status: 0 on success, 1 on usage or
/// validation errors (one-line diagnostic on `err`), 2 when a strict
/// verify sweep finds a formula/oracle disagreement.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace bjcomp
