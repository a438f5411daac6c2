#ifndef DYNSEARCH_TOOLS_COMMANDS_HPP
#define DYNSEARCH_TOOLS_COMMANDS_HPP

#include <ostream>

namespace dynsearch::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitNegative = 1;  // UNSOLVABLE, failed check, violated property
inline constexpr int kExitError = 2;     // bad input, step limit, contract violation
inline constexpr int kExitUsage = 64;
inline constexpr int kExitIo = 74;

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace dynsearch::cli

#endif
