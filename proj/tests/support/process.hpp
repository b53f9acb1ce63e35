#pragma once

#include <string>

namespace spot::test {

struct CommandResult {
  int exit_code = -1;
  std::string out;  // stdout
  std::string err;  // stderr
};

/// Runs a shell command line, capturing both streams.
CommandResult run_command(const std::string& command_line);

/// Single-quotes an argument for the shell.
std::string shell_quote(const std::string& arg);

}  // namespace spot::test
