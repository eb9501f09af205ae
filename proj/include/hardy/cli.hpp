#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace hardy::cli {

// Runs one CLI invocation (args exclude the program name) and returns the
// process exit code: 0 ok, 2 bad flags, 3 size cap exceeded, 4 invalid
// input file, 5 non-finite solver iterate.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hardy::cli
