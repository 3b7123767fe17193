#ifndef VFL_TOOLS_CLI_HPP
#define VFL_TOOLS_CLI_HPP

#include <ostream>
#include <string>
#include <vector>

namespace vfl::cli {

// args excludes the program name. Returns the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace vfl::cli

#endif
