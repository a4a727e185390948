#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace dcsbox::cli {

enum ExitCode : int {
    kOk = 0,
    kUsage = 2,
    kGenerationFailure = 3,
    kFormatError = 4,
};

/// Runs one command line (args excludes the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace dcsbox::cli
