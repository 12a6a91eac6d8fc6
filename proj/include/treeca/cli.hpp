#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace treeca::cli {

// Exit codes. Predicates answer with kTrue or kFalse.
inline constexpr int kTrue = 0;
inline constexpr int kFalse = 1;
inline constexpr int kUsageError = 2;     // bad arguments, unreadable or malformed input
inline constexpr int kDomainError = 3;    // precondition or path-closedness violated
inline constexpr int kBudgetError = 4;

// Runs one verb; `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace treeca::cli
