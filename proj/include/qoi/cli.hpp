#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace qoi {

/// Runs one command of the qoi tool. args excludes the program name. Returns
/// 0 on success, 1 on a domain error and 2 on malformed input.
int run(std::vector<std::string> args, std::istream& in, std::ostream& out);

}  // namespace qoi
