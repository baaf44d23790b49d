#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace yamabe {

/// Command-line front end.  args excludes the program name.  Returns 0 on
/// success, 1 on domain/usage errors, 2 on verification failure.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

} // namespace yamabe
