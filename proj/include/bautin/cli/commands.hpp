#pragma once

namespace bautin::cli {

/// Parses argv, runs one subcommand and returns the process exit code:
/// 0 success, 1 failed comparison, 2 configuration error, 3 numeric failure.
int run_cli(int argc, char** argv);

}  // namespace bautin::cli
