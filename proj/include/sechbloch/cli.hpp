#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "sechbloch/bloch_ode.hpp"

// Command-line front end: `winf`, `integrate`, `figure` and `verify`.
namespace sechbloch::cli {

/// Stable process exit codes.
enum ExitCode : int {
  kExitOk = 0,
  kExitVerifyFailed = 1,
  kExitUsage = 2,
  kExitNumeric = 3,
};

enum class OutputFormat { csv, json };

struct CliConfig {
  OutputFormat output_format = OutputFormat::csv;
  std::optional<std::string> output_path;  // stdout when empty
  int precision_digits = 12;
  ode::IntegratorConfig integrator{};

  void validate() const;
};

/// One output row. Empty values print as an empty CSV field or JSON null.
using Value = std::variant<std::monostate, double, std::string>;
using Record = std::vector<std::pair<std::string, Value>>;

/// Locale-independent shortest-general formatting with `digits` significant
/// digits; 17 digits round-trip exactly. Non-finite values print as nan/inf/-inf.
std::string format_number(double v, int digits);

/// Header row plus one line per record, `\n` line endings. All records must
/// share the first record's keys.
void write_csv(std::ostream& os, const std::vector<Record>& records, int digits);

/// A JSON array of flat objects, or a single object when `single` is set and
/// exactly one record is given. Non-finite numbers become null.
void write_json(std::ostream& os, const std::vector<Record>& records, int digits, bool single);

/// Runs one command line (without the program name). `color` enables ANSI
/// colouring of the verify report.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
        bool color = false);

/// Entry point used by the executable: stdout/stderr, colour when stdout is a
/// terminal and NO_COLOR is unset.
int main_entry(int argc, char** argv);

}  // namespace sechbloch::cli
