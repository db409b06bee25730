#include <cstdio>
#include <string>
#include <vector>

#include "sps/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  sps::CommandResult res = sps::run_command(args);
  std::fputs(res.output.c_str(), res.status == 2 ? stderr : stdout);
  return res.status;
}
