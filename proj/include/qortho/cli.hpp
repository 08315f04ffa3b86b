#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace qortho {

/// Runs one `qortho` command. `args` excludes the program name.
/// Returns 0 when every check passes, 1 when one fails, 2 on usage errors.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qortho
