#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace lakebloom::cli {

/// Runs one command line (without the program name) and returns the exit status:
/// 0 on success, 1 on invalid input, 2 on a model or runtime failure.
int run(const std::vector<std::string>& args, std::ostream& err);

}  // namespace lakebloom::cli
