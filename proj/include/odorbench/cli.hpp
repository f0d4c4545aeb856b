#pragma once

#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace odorbench {

// Environment variable naming the default dataset directory for `ingest`.
inline constexpr std::string_view kDataEnvVar = "ODORBENCH_DATA";

// Exit codes: 0 success, 1 runtime failure or failed internal assertion,
// 2 usage error. CLI11 parse failures use CLI11's own nonzero codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;

// Entry point for the odorbench command line: subcommands ingest, bench,
// repro and probe. args excludes the program name.
int RunCli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace odorbench
