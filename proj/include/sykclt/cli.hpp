#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace sykclt {

enum ExitCode : int {
    kExitOk = 0,
    kExitFailure = 1,
    kExitSchema = 2,
    kExitResource = 3,
    kExitNumeric = 4,
};

/// Runs one invocation, e.g. {"moments", "--k-max", "8"}. Tables go to files
/// under --out (or $SYKCLT_OUTPUT_DIR) and otherwise to `out`; failures print
/// one JSON object to `err`.
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace sykclt
