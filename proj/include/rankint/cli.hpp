#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace rankint {

namespace exit_code {
inline constexpr int ok = 0;
inline constexpr int internal = 1;
inline constexpr int config = 2;
inline constexpr int numeric = 3;
inline constexpr int validation = 4;
}  // namespace exit_code

/// Entry point of the command-line tool; `args` excludes the program name.
/// Data goes to `out` unless --out is given, diagnostics to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace rankint
