#pragma once

// Command-line front end. Results are JSON lines on `out`; usage errors and
// progress go to `err`.
//
// Exit codes: 0 success or property holds, 1 property violated, 2 usage
// error, 3 budget exhausted before a verdict.

#include <iosfwd>

namespace adictile {

inline constexpr int kExitOk = 0;
inline constexpr int kExitViolated = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitBudget = 3;

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace adictile
