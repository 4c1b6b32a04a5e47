#ifndef BRIM_CLI_HPP
#define BRIM_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace brim {

/// Process exit codes of the command-line front end.
enum ExitCode : int {
  kExitOk = 0,
  kExitComputation = 1,
  kExitVerification = 2,
  kExitUsage = 3,
};

/// Runs one command. `args` excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace brim

#endif  // BRIM_CLI_HPP
