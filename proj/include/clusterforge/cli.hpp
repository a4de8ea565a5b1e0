#pragma once

#include <iostream>
#include <string>
#include <vector>

namespace clusterforge {

/// Runs the command line `args` (args[0] is the program name). Exit codes:
/// 0 success, 1 domain error or failed check, 2 usage or parse error.
int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace clusterforge
