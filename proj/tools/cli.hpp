#pragma once

#include <iosfwd>

namespace ptw::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitRuntime = 1;
inline constexpr int kExitValidation = 2;

/// Entry point of the `ptwigner` tool. Subcommands: spectrum, wigner, scaling,
/// revival-check, sensitivity. Returns the process exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace ptw::cli
