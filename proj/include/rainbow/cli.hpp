#pragma once

#include <iostream>
#include <string>
#include <vector>

namespace rainbow {

/// Entry point behind the `rainbow` binary, separated so tests can drive it.
/// args excludes the program name. Machine-readable output goes to out,
/// human summaries to err. Returns the process exit code: 0 success,
/// 1 violation or counterexample found, 2 usage or I/O error.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace rainbow
