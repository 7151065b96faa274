#ifndef SYMCORE_TOOLS_CLI_H_
#define SYMCORE_TOOLS_CLI_H_

#include <ostream>
#include <string>
#include <vector>

namespace symcore::cli {

// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kInfeasible = 1;
inline constexpr int kUsageOrDataError = 2;

// Runs one command line (args excludes the program name). Reports go to out as
// JSON, or as aligned key/value text with --human; diagnostics go to err.
int Run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace symcore::cli

#endif  // SYMCORE_TOOLS_CLI_H_
