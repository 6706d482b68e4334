#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace schurlab::cli {

inline constexpr int kExitPass = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;

/// Environment variable naming the directory for relative --output paths.
inline constexpr const char* kOutDirEnv = "SCHURLAB_OUT_DIR";

/// Parses and dispatches one command line. Reports go to `out` (or the
/// --output file), diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace schurlab::cli
