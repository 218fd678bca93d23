#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace legdga::cli {

// Runs one legdga invocation. Returns the process exit code:
// 0 pass, 1 verification failure, 2 input error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace legdga::cli
