#pragma once

#include <iosfwd>

namespace cstar::cli {

enum ExitCode : int {
  kOk = 0,
  kInternal = 1,
  kPrecondition = 2,
  kSchema = 3,
  kNoneAtDegree = 4,
};

/// Runs the command line. JSON results go to `out` (or --output), one-line
/// {"error": ...} diagnostics to `err`.
int run(int argc, const char* const* argv, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace cstar::cli
