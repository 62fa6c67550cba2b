#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace abd::cli {

enum ExitCode : int {
  kAnswered = 0,
  kUsageError = 1,
  kFailure = 2,
};

// Runs `abduce` with `args` (without the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace abd::cli
