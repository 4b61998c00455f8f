#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace heatctl {

/// Exit codes: 0 success, 1 usage or validation error, 2 numerical failure.
int cli_main(int argc, char** argv);

/// Same as above with explicit streams; args excludes the program name.
int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace heatctl
