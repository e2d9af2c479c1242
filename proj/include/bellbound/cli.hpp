#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace bellbound {

// Exit codes: 0 success, 1 usage error, 2 capacity error (variable cap),
// 3 verdict violated under --assert-respected.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitCapacity = 2;
inline constexpr int kExitViolated = 3;

int cli_main(const std::vector<std::string>& args, std::ostream& out,
             std::ostream& err);

}  // namespace bellbound
