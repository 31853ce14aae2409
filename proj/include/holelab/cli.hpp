#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace holelab::cli {

// Exit codes of run().
inline constexpr int kOk = 0;
inline constexpr int kUsageError = 1;
inline constexpr int kNumericFailure = 2;

// Entry point of the command-line tool. Records go to `out` (or --output),
// diagnostics to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace holelab::cli
