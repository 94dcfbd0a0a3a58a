#pragma once

#include <ostream>

namespace gesture::cli {

// Exit codes shared by every subcommand.
inline constexpr int kExitOk = 0;
inline constexpr int kExitDataError = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitClassificationFailed = 3;

/// Entry point of the `gesture` tool. Subcommands: ingest, train, classify,
/// evaluate, bench, synth.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace gesture::cli
