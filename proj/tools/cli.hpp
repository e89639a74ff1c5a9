#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace spherelp::cli {

enum ExitCode : int { ok = 0, usage = 1, infeasible = 2, mismatch = 3 };

/// Runs one command. `args` excludes the program name.
int run(std::vector<std::string> args, std::ostream& out, std::ostream& err);

}  // namespace spherelp::cli
