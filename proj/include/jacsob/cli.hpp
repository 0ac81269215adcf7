#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace jacsob {

/// Exit codes of the command-line tool.
enum ExitCode : int { kExitPass = 0, kExitFailedCheck = 1, kExitConfig = 2 };

/// Runs one command line (argv[0] is the program name). Results go to `out`
/// unless --out names a file; diagnostics and usage text go to `err`.
int dispatch(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err);

} // namespace jacsob
