#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "satotate/error.hpp"

namespace satotate::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitData = 2;
inline constexpr int kExitResource = 3;

int exit_code(ErrorKind kind) noexcept;

/// Runs one invocation. `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace satotate::cli
