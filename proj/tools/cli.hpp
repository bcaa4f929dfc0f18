#ifndef FOLIAGE_TOOLS_CLI_HPP
#define FOLIAGE_TOOLS_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace foliage::cli {

enum ExitCode : int {
  kPass = 0,
  kVerificationFailed = 1,
  kInputError = 2,
};

/// Runs one command line (args[0] is the program name). Human-readable
/// output goes to `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace foliage::cli

#endif  // FOLIAGE_TOOLS_CLI_HPP
