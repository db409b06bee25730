#pragma once

#include <string>
#include <vector>

namespace sps {

struct CommandResult {
  int status = 0;  // 0 ok, 1 mathematical negative, 2 error
  std::string output;
};

/// Dispatches one CLI invocation (argv without the program name). Output is
/// canonical and byte-stable across runs for identical inputs.
CommandResult run_command(const std::vector<std::string>& args);

}  // namespace sps
