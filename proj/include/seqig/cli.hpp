#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace seqig::cli {

// Exit codes:
//   0  success / condition holds / derivable / separated
//   1  condition fails, transfer refused, not derivable, not separated
//   2  input error (bad files, bad flags, invalid models)
//   3  undefined observational conditional during forced transfer
//   4  internal error (a proven implication was violated)
inline constexpr int kOk = 0;
inline constexpr int kFails = 1;
inline constexpr int kInputError = 2;
inline constexpr int kUndefinedTransfer = 3;
inline constexpr int kInternalError = 4;

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace seqig::cli
