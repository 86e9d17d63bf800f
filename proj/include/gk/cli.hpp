#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace gk::cli {

enum ExitCode : int { kOk = 0, kFailed = 1, kUsage = 2, kUnsupported = 3 };

// args excludes the program name. Reports go to out, diagnostics to err.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace gk::cli
