#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "redten/zoo.hpp"

namespace redten {

// The CLI's working core, callable from tests. `args` excludes argv[0].
// Exit codes: 0 success, 1 a mathematical check failed, 2 usage/input error.
struct CliResult {
  int exit_code = 0;
  std::string output;  // rendered JSON or text table
};

CliResult cli_run(const std::vector<std::string>& args);

}  // namespace redten
