#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace fuzzavail {

enum ExitStatus : int { kExitOk = 0, kExitDiagnostics = 1, kExitUsage = 2 };

// Runs the `fuzzavail` command line. `args` excludes the program name.
// Data goes to `out`, diagnostics and warnings to `err`; `in` backs "-"
// paths.
int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace fuzzavail
