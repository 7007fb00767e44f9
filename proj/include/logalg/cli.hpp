#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace logalg::cli {

/// Exit codes: 0 affirmative verdict / successful computation, 1 negative
/// verdict, 2 input or usage error, 3 numeric error.
enum ExitCode : int { kOk = 0, kNegative = 1, kInputError = 2, kNumericError = 3 };

/// Runs one subcommand. `args` excludes the program name. The JSON report
/// goes to `out`, human-readable diagnostics to `err`; "-" as a file name
/// reads the document from `in`.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace logalg::cli
