#ifndef X0N_CLI_HPP
#define X0N_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace x0n::cli {

enum ExitCode { kOk = 0, kFailed = 1, kUsage = 2, kDomain = 3, kNetwork = 4 };

// Runs one command; args excludes the program name. Returns the exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace x0n::cli

#endif // X0N_CLI_HPP
