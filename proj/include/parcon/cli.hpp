#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace parcon::cli {

// Exit status: 0 success, 1 domain error or negative verdict, 2 usage/parse error.
enum Exit : int { kOk = 0, kNegative = 1, kUsage = 2 };

// Runs one command line (without the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace parcon::cli
