#pragma once

#include <iosfwd>

namespace specrank {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 1;
inline constexpr int kExitLemmaFailed = 2;
inline constexpr int kExitRuntime = 3;

// Subcommands: run, validate, calibrate, demo. See `specrank --help`.
int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace specrank
