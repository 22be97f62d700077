#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace netctl::cli {

struct CommandInfo {
  std::string name;
  std::string summary;
  std::vector<std::string> operations;  // library operations the subcommand drives
};

const std::vector<CommandInfo>& dispatch_table();

// Exit codes: 0 success, 1 analysis error (variant name on err), 2 usage error.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace netctl::cli
