#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace polypack {

enum ExitCode : int {
    kExitOk = 0,
    kExitInvalid = 1,  // solution failed verification
    kExitUsage = 2,    // bad flags or unreadable/invalid input files
    kExitInternal = 3,
};

// Full command line including the program name. Machine-readable output
// goes to `out`, diagnostics and progress to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, char** argv);

}  // namespace polypack
