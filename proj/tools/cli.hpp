#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace shockvol::cli {

enum ExitCode : int { kOk = 0, kUsage = 2, kIo = 3, kData = 4, kNumeric = 5 };

/// Runs the command line `args` (without the program name). Diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace shockvol::cli
