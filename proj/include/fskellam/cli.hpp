#pragma once

#include <functional>
#include <ostream>
#include <string>
#include <vector>

namespace fskellam {

enum ExitCode : int {
  kExitOk = 0,
  kExitVerifyFailed = 1,
  kExitUsage = 2,
  kExitNumeric = 3,
};

inline constexpr unsigned long long kDefaultSeed = 42;

/// Runs one command line (without the program name). CSV goes to the --out
/// file when given, otherwise to out; diagnostics go to err.
int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err);

/// Adds "--key=value" for every key=value line of a config file whose key is
/// not already present as a flag. Blank lines and lines starting with '#' are
/// skipped, as are keys for which accepts (when set) returns false.
std::vector<std::string> apply_config(std::vector<std::string> args, const std::string& path,
                                      const std::function<bool(const std::string&)>& accepts = {});

}  // namespace fskellam
