#pragma once

// Column-oriented result tables and their CSV / JSON serialization. Both
// formats carry the tool version, the subcommand and the resolved config.

#include <cstdint>
#include <ostream>
#include <string>
#include <variant>
#include <vector>

#include "cqed/config.hpp"

namespace cqed {

using Cell = std::variant<double, std::int64_t, std::string>;

struct Table {
  std::string name;  ///< file stem
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  void add_row(std::vector<Cell> row);
};

enum class OutputFormat { csv, json };

std::string_view tool_version();

/// `# cqed-readout <version>` and `# command = <cmd>`, the resolved config as
/// `# key = value` lines, then one CSV header row and the data rows.
/// Doubles use the shortest round-trip representation.
void write_csv(std::ostream& out, const Table& table, const Config& config, std::string_view command);

/// {"tool", "version", "command", "config": {section: {key: value}},
///  "columns": [...], "rows": [[...], ...]}. Non-finite doubles become null.
void write_json(std::ostream& out, const Table& table, const Config& config, std::string_view command);

std::string format_cell(const Cell& cell);

}  // namespace cqed
