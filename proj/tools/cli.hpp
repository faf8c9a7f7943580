#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace gxcalc::cli {

// Exit statuses of the command-line front end.
inline constexpr int kOk = 0;
inline constexpr int kDomainError = 1;
inline constexpr int kParseError = 2;
inline constexpr int kUsageError = 64;

// Runs one command. args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace gxcalc::cli
