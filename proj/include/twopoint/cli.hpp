#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace twopoint::cli {

/// One evaluated quantity with the parameters that produced it, in CSV
/// column order.
struct EvalResult {
  std::vector<std::pair<std::string, std::string>> fields;
  double value = 0.0;
};

/// Decimal form with 17 significant digits, enough to round-trip a double.
std::string format_number(double x);
/// Quotes a field if it contains a comma, quote or newline.
std::string csv_field(const std::string& text);

enum ExitCode : int {
  kOk = 0,
  kCheckFailed = 1,
  kBadArguments = 2,
  kNumericalFault = 3,
};

/// Entry point of the `twopoint` tool. CSV goes to `out` (or the file named
/// by --out), diagnostics to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace twopoint::cli
