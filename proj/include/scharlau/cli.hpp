#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace scharlau::cli {

// Exit codes: 0 verified, 1 a mathematical check failed, 2 usage/input error.
inline constexpr int kOk = 0;
inline constexpr int kCheckFailed = 1;
inline constexpr int kBadInput = 2;

// Runs one command line (without the program name). Reports go to out and
// diagnostics to err; output is written only after the computation finishes.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace scharlau::cli
