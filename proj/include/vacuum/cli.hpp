#pragma once

// Command-line front end: report model, CSV/JSON writers and the subcommand
// dispatcher used by the vacuum-density tool.

#include <iosfwd>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace vacuum::cli {

enum ExitCode : int { kPass = 0, kCheckFailed = 1, kInvalidInput = 2, kNotConverged = 3 };

using Cell = std::variant<double, long long, bool, std::string>;

struct Table {
  std::string name;
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  // Throws std::logic_error if the row width differs from the header.
  void add(std::vector<Cell> row);
};

struct Report {
  std::vector<std::pair<std::string, Cell>> metadata;  // emitted in insertion order
  Table rows;
  std::vector<Table> extra;  // secondary tables, after the main one

  void meta(std::string key, Cell value) { metadata.emplace_back(std::move(key), std::move(value)); }
};

// 17 significant digits, locale independent; "nan", "inf", "-inf" for non-finite values.
std::string format_number(double v);

// `#` comment lines for the metadata (first line is the units note), header
// row, data rows. Extra tables follow after a blank line and a `# table:` line.
void write_csv(const Report& report, std::ostream& out);

// {"metadata": {...}, "rows": [{column: value, ...}, ...]}; extra tables go
// under metadata.tables.
void write_json(const Report& report, std::ostream& out);

// Runs one invocation; returns the process exit status.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace vacuum::cli
