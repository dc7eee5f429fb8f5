#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace rlah::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInvalid = 2;
inline constexpr int kExitCapacity = 3;

// Runs one command. `args` excludes the program name. The result goes to
// `out` (or the --out file), error records to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// Shortest decimal that reads back as the same binary64.
std::string format_double(double x);

}  // namespace rlah::cli
