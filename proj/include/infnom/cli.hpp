#pragma once

// Command-line front end. Exit codes: 0 success, 1 parse or flag error,
// 2 support violation, 3 inconclusive, 4 any other failure.

#include <ostream>
#include <string>
#include <vector>

namespace infnom::cli {

/// `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace infnom::cli
