#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace endo::cli {

enum ExitCode : int { ok = 0, usage = 1, verification_failed = 2, resource_cap = 3 };

/// Runs one command line (without the program name) and returns its exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace endo::cli
