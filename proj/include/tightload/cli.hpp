#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace tightload::cli {

// Exit codes.
inline constexpr int kAffirmative = 0;
inline constexpr int kNegative = 1;
inline constexpr int kUndecided = 2;
inline constexpr int kUsage = 64;

inline constexpr std::size_t kBuiltinBudget = 1000;

// TL_BUDGET_DEFAULT when it holds a positive integer, otherwise 1000.
std::size_t default_budget();

// args excludes the program name. Everything goes to out/err; nothing
// escapes as an exception.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace tightload::cli
