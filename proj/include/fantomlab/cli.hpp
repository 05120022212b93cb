#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace fantomlab {

// Exit codes: 0 when every claim is verified or audited-pass, 1 on usage or
// resource errors, 2 when any claim is violated or audited-fail.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace fantomlab
