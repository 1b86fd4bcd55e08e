#pragma once

#include <string>
#include <vector>

namespace embfin {

// Outcome of one command-line invocation. Exit codes:
//   0 success, 1 consistency failures found (`check`), 2 domain error,
//   3 usage/parse error, 4 rank-table file error.
struct CliResult {
    int exit_code = 0;
    std::string out;
    std::string err;
};

// Runs the full command surface on `args` (without the program name) and
// captures the streams, so tests can drive the exact CLI in-process.
CliResult run_cli(const std::vector<std::string>& args);

// Thin adapter for main(): forwards argv, prints the captured streams.
int run_cli_main(int argc, char** argv);

}  // namespace embfin
