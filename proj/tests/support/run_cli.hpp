#pragma once

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <string>

#include "support/temp_dir.hpp"

namespace topofuse::testing {

struct CliResult {
  int exit_code = -1;
  std::string out;
  std::string err;
};

/// Runs the topofuse binary with args (already shell-quoted) from cwd.
inline CliResult run_cli(const std::filesystem::path& cwd, const std::string& args) {
  const std::filesystem::path out = cwd / ".cli_stdout";
  const std::filesystem::path err = cwd / ".cli_stderr";
  const std::string command = "cd '" + cwd.string() + "' && '" TOPOFUSE_CLI "' " + args + " >'" + out.string() +
                              "' 2>'" + err.string() + "'";
  const int status = std::system(command.c_str());
  CliResult result;
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  result.out = read_bytes(out);
  result.err = read_bytes(err);
  std::filesystem::remove(out);
  std::filesystem::remove(err);
  return result;
}

}  // namespace topofuse::testing
