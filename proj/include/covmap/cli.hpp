#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace covmap::cli {

enum ExitCode : int { kOk = 0, kUsage = 1, kValidation = 2, kIo = 3 };

// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace covmap::cli
