#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace clnet::cli {

// Exit codes: 0 ok, 1 bad input (arguments, files, parameters),
// 2 a coloring failed the checker, the symbolic verifier or a simulation.
enum Exit { kOk = 0, kInvalid = 1, kVerifyFailed = 2 };

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace clnet::cli
