#pragma once

#include <iosfwd>

namespace powerdeform::tools {

inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitNonunivalent = 2;
inline constexpr int kExitReproFailure = 3;

/// Runs one command line; all output goes to the given streams.
int dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace powerdeform::tools
