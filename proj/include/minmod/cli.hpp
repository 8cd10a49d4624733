#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace minmod {

inline constexpr const char* kVersion = "0.1.0";

// Exit codes of the command-line front end.
enum ExitCode : int {
  kExitOk = 0,
  kExitPropertyFailed = 1,
  kExitParse = 2,
  kExitResource = 3,
  kExitUnsupported = 4,
};

// "1..5,8,10..12" -> 1 2 3 4 5 8 10 11 12. Throws ParseError.
std::vector<std::size_t> parse_index_list(const std::string& text);

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run_cli(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace minmod
