#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

namespace szlab::cli {

enum ExitCode { kOk = 0, kCheckFailed = 1, kUsage = 2, kInput = 3, kNumerical = 4 };

/// Runs one command line (argv[0] is the program name). Reports go to
/// --out when given, otherwise to `out`; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Thresholds used by every check, printed into each report.
nlohmann::ordered_json defaults_table();

}  // namespace szlab::cli
