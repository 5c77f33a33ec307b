#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace asmooth::cli {

// Exit codes.
inline constexpr int kSuccess = 0;
inline constexpr int kDomainFailure = 1;
inline constexpr int kUsageOrIo = 2;

// Runs one command line (args[0] is the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace asmooth::cli
