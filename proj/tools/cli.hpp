#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace primroot::cli {

// Runs one subcommand. Returns 0 on success, 1 on a computation error and
// 2 on a usage error. args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace primroot::cli
