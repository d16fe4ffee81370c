#pragma once

namespace verinews::cli {

// Exit codes: 0 success, 1 internal failure, 2 usage or input error.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInternal = 1;
inline constexpr int kExitUsage = 2;

int run(int argc, char** argv);

}  // namespace verinews::cli
