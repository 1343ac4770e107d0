#pragma once

#include <ostream>

namespace issprobe {

inline constexpr const char* kVersion = "0.1.0";

/// Exit codes: 0 success, 1 configuration error, 2 stability-violation
/// verdict, 3 numerical failure.
enum ExitCode { kExitOk = 0, kExitConfig = 1, kExitViolation = 2, kExitNumerical = 3 };

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace issprobe
