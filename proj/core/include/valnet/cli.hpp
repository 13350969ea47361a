#pragma once

namespace valnet::cli {

/// Entry point of the valnet command-line tool. Returns the process exit
/// code: 0 on success, 1 on runtime errors, 2 on usage errors.
int run_cli(int argc, const char* const* argv);

}  // namespace valnet::cli
