#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace dctfuse::cli {

// Exit codes: 0 success, 1 internal error, 2 input parse error,
// 3 dimension/shape error, 4 usage error.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInternal = 1;
inline constexpr int kExitParse = 2;
inline constexpr int kExitShape = 3;
inline constexpr int kExitUsage = 4;

// args[0] is the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace dctfuse::cli
