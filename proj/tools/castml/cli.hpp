#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace castml::cli {

enum ExitCode : int { kSuccess = 0, kFailure = 1, kUsage = 2 };

struct CliConfig {
  std::string input_path;
  std::string output_path;  // empty: input stem + ".html"
  bool standalone = true;
  std::optional<std::string> runtime_path;
  bool check_only = false;
  int verbosity = 0;
};

/// Default output location for `input`: same directory, ".html" extension.
std::string default_output_path(const std::string& input);

/// Entry point. `args[0]` is the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, std::istream& in);

}  // namespace castml::cli
