#pragma once

#include <iosfwd>

namespace iftt::cli {

// Stable process exit codes.
enum ExitCode : int {
    kOk = 0,
    kUsage = 2,
    kAmbiguous = 3,
    kParseFailure = 4,
    kBindFailure = 5,
};

/// Entry point behind the `iftt-pin` binary: demo | simulate | crack | serve.
/// Streams are injected so tests can drive the commands in-process.
int run(int argc, const char* const* argv, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace iftt::cli
