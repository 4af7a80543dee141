#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace gbs {

// Exit codes: 0 completed, 2 input or usage error, 3 resource bound exceeded.
int run_cli(const std::vector<std::string> &args, std::istream &in, std::ostream &out, std::ostream &err);

} // namespace gbs
