#include <iostream>

#include "tcc/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    const auto result = tcc::cli::run(args);
    (result.exit_code == tcc::cli::kExitError ? std::cerr : std::cout) << result.report_text;
    return result.exit_code;
}
