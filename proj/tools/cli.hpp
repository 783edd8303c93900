// Command-line front end. Exit codes: 0 success, 1 a check failed,
// 2 usage or configuration error.
#ifndef BSSYM_TOOLS_CLI_HPP_
#define BSSYM_TOOLS_CLI_HPP_

#include <ostream>
#include <string>
#include <vector>

namespace bssym::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailed = 1;
inline constexpr int kExitUsage = 2;

// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace bssym::cli

#endif  // BSSYM_TOOLS_CLI_HPP_
