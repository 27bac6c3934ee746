// Command-line front end. The CLI owns the worker pool; library code only sees
// a BatchRunner.
#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace stabledev {

/// Environment variable that redirects the output directory.
inline constexpr const char* kOutDirEnv = "STABLEDEV_OUT_DIR";

/// args excludes the program name. Returns the process exit code.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace stabledev
