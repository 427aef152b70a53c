#pragma once

namespace arbc::cli {

// Full command-line entry point. Returns the process exit code:
// 0 success, 2 configuration/usage error, 3 runtime error.
int run(int argc, const char* const* argv);

}  // namespace arbc::cli
