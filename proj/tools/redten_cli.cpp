#include <iostream>
#include <string>
#include <vector>

#include "redten/cli_core.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  redten::CliResult res = redten::cli_run(args);
  std::cout << res.output;
  return res.exit_code;
}
