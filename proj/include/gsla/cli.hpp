#pragma once

// Command-line front end. Exit codes: 0 positive verdict, 1 negative verdict,
// 2 invalid input, 3 inconclusive.

#include <iosfwd>

namespace gsla {

inline constexpr const char* kVersion = "0.1.0";

enum ExitCode { kPositive = 0, kNegative = 1, kInvalid = 2, kInconclusive = 3 };

/// Runs one command; "-" as a file name means in / out.
int run(int argc, const char* const* argv, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace gsla
