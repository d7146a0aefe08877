#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace descartes::cli {

enum ExitCode : int { ok = 0, usage_error = 1, computation_error = 2 };

/// Entry point shared by the executable and the tests. `args` excludes the
/// program name. Results go to `out` (or --out), diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace descartes::cli
