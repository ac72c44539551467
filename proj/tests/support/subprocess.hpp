#pragma once

#include <sys/wait.h>
#include <unistd.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace testsupport {

struct CliResult {
  int exit_code = -1;
  std::string out;
  std::string err;
};

inline std::string shell_quote(const std::string& arg) {
  std::string quoted = "'";
  for (char c : arg) {
    if (c == '\'') {
      quoted += "'\\''";
    } else {
      quoted += c;
    }
  }
  quoted += "'";
  return quoted;
}

/// Runs the built CLI binary with the given arguments, capturing both
/// streams. Temp capture files are unique per call so tests can run in
/// parallel.
inline CliResult run_cli(const std::vector<std::string>& args,
                         const std::string& env_prefix = "") {
  static int counter = 0;
  namespace fs = std::filesystem;
  const std::string tag = std::to_string(::getpid()) + "_" +
                          std::to_string(counter++);
  const fs::path out_path = fs::temp_directory_path() / ("cli_out_" + tag);
  const fs::path err_path = fs::temp_directory_path() / ("cli_err_" + tag);

  std::string command = env_prefix + shell_quote(CLI_BINARY);
  for (const std::string& arg : args) command += " " + shell_quote(arg);
  command += " > " + shell_quote(out_path.string()) + " 2> " +
             shell_quote(err_path.string());

  const int status = std::system(command.c_str());

  auto slurp = [](const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
  };
  CliResult result;
  result.out = slurp(out_path);
  result.err = slurp(err_path);
  fs::remove(out_path);
  fs::remove(err_path);
  if (WIFEXITED(status)) {
    result.exit_code = WEXITSTATUS(status);
  }
  return result;
}

}  // namespace testsupport
