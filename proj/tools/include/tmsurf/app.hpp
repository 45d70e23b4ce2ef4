#pragma once

/// The tmsurf command line: generate, validate, frames, factorize.
///
/// Exit codes: 0 success, 1 usage or parse error, 2 domain or singularity error,
/// 3 I/O or numerical failure (including failed validation).

#include <iosfwd>

#include "tms/error.hpp"

namespace tms::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitDomain = 2;
inline constexpr int kExitFailure = 3;

int exit_code_for(ErrorKind kind);

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace tms::cli
