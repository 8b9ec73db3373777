#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hclab/io.hpp"

namespace hclab::cli {

using nlohmann::json;

/// Exit codes of the runner.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInputError = 1;
inline constexpr int kExitViolated = 2;

enum class Kind {
  Int,   // integer
  Real,  // floating point
  Text,  // string
  List,  // numbers; "1,2,3" on the command line, an array in config files
  Json   // any JSON value; JSON text or @path on the command line
};

struct Option {
  std::string name;
  Kind kind;
  json fallback;
  std::string help;
};

struct Command {
  std::string name;
  std::string help;
  std::vector<Option> options;
};

const std::vector<Command>& commands();
/// InputError for an unknown subcommand.
const Command& find_command(const std::string& name);

/// Defaults merged with `given`; InputError for unknown keys or wrongly typed values.
json resolve(const Command& cmd, const json& given);
/// Converts a command-line string to the option's JSON value.
json parse_flag(const Option& opt, const std::string& text);

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
};

struct Outcome {
  json report;
  int exit_code = kExitOk;
  std::optional<Table> table;  // CSV form, when the command has one
};

/// Runs a subcommand on resolved parameters. Library errors propagate.
Outcome execute(const std::string& command, const json& params, unsigned threads = 1);

/// Full serialized run: the JSON envelope or CSV text, plus the exit code.
/// Domain, precondition and dimension errors become an "inapplicable" report with exit 2.
struct Rendered {
  std::string text;
  int exit_code = kExitOk;
};
Rendered render(const std::string& command, const json& given, const std::string& format, unsigned threads = 1);

const std::vector<std::string>& golden_suites();
/// File name -> contents for a suite ("all" selects every suite). InputError for an unknown suite.
std::map<std::string, std::string> emit_goldens(const std::string& suite);

}  // namespace hclab::cli
