#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace codefarm::cli {

/// Process exit codes.
enum ExitCode : int {
    kOk = 0,
    kUsageError = 2,  // bad flags, config, or input file
    kDataError = 3,   // snapshot missing, malformed, or incompatible
};

/// Runs one invocation. args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace codefarm::cli
