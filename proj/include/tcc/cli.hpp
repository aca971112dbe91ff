#pragma once

#include <string>
#include <vector>

namespace tcc::cli {

struct CommandResult {
    int exit_code = 0;
    std::string report_text;
    std::vector<std::string> artifacts;  // files written
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailed = 1;
inline constexpr int kExitError = 2;

/// Runs one subcommand. `args` excludes the program name.
///   validate <graph> [--min-coverage X]
///   decompose <graph> [--dot out.dot]
///   compare <graphA> <graphB>
///   optimize <graph> [--out policy.txt]
///   simulate <graph> --start V --tracks N [--max-steps K] [--seed S] [--outcome KIND] [--export FILE]
///   ingest <counts> --target V [--out graph.tg]
/// Usage, parse and library errors return exit code 2 with the message in
/// report_text.
CommandResult run(const std::vector<std::string>& args);

}  // namespace tcc::cli
