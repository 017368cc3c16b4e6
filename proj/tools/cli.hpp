#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace quartic::cli {

enum ExitCode : int {
    kOk = 0,
    kUsage = 1,
    kInvalidParameters = 2,
    kInadmissibleBeta = 3,
    kAuditFailure = 4,
};

/// Runs one invocation; args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace quartic::cli
