#ifndef SETMEANS_CLI_HPP
#define SETMEANS_CLI_HPP

#include <string>
#include <vector>

#include "setmeans/report.hpp"

namespace setmeans {

enum ExitCode : int {
    kExitOk = 0,
    kExitUsage = 2,        // usage, parse or validation error
    kExitDomain = 3,       // domain error or undefined result
    kExitInconclusive = 4, // an INCONCLUSIVE answer under --strict
};

struct CommandOutcome {
    int exitCode = kExitOk;
    Report report;
    std::string out; // text or JSON for standard output
    std::string err; // messages for standard error
};

/// Runs one command line (without the program name). Never throws for bad
/// input; the exit code classifies the failure.
CommandOutcome runCommand(const std::vector<std::string>& args);

} // namespace setmeans

#endif
