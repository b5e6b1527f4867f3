#include "cqed/table.hpp"

#include <cmath>
#include <sstream>

#include <json.hpp>

#include "cqed/errors.hpp"

namespace cqed {
namespace {

nlohmann::ordered_json config_json(const Config& config) {
  nlohmann::ordered_json out = nlohmann::ordered_json::object();
  for (const auto& spec : config_schema()) {
    auto& section = out[std::string(spec.section)];
    const std::string key(spec.key);
    switch (spec.kind) {
      case ValueKind::number: section[key] = config.number(spec.section, spec.key); break;
      case ValueKind::integer: section[key] = config.integer(spec.section, spec.key); break;
      case ValueKind::number_list: section[key] = config.numbers(spec.section, spec.key); break;
      case ValueKind::integer_list: section[key] = config.integers(spec.section, spec.key); break;
      case ValueKind::word: section[key] = config.word(spec.section, spec.key); break;
    }
  }
  return out;
}

}  // namespace

void Table::add_row(std::vector<Cell> row) {
  if (row.size() != columns.size())
    throw Error("table '" + name + "': row has " + std::to_string(row.size()) + " cells, expected " +
                std::to_string(columns.size()));
  rows.push_back(std::move(row));
}

std::string_view tool_version() { return CQED_VERSION; }

std::string format_cell(const Cell& cell) {
  if (const auto* d = std::get_if<double>(&cell)) {
    if (std::isnan(*d)) return "nan";
    if (std::isinf(*d)) return *d > 0 ? "inf" : "-inf";
    return format_number(*d);
  }
  if (const auto* i = std::get_if<std::int64_t>(&cell)) return std::to_string(*i);
  return std::get<std::string>(cell);
}

void write_csv(std::ostream& out, const Table& table, const Config& config, std::string_view command) {
  out << "# cqed-readout " << tool_version() << '\n';
  out << "# command = " << command << '\n';
  out << config.render("# ");
  for (std::size_t c = 0; c < table.columns.size(); ++c) out << (c ? "," : "") << table.columns[c];
  out << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) out << (c ? "," : "") << format_cell(row[c]);
    out << '\n';
  }
}

void write_json(std::ostream& out, const Table& table, const Config& config, std::string_view command) {
  nlohmann::ordered_json doc;
  doc["tool"] = "cqed-readout";
  doc["version"] = tool_version();
  doc["command"] = command;
  doc["config"] = config_json(config);
  doc["columns"] = table.columns;
  auto rows = nlohmann::ordered_json::array();
  for (const auto& row : table.rows) {
    auto json_row = nlohmann::ordered_json::array();
    for (const auto& cell : row) {
      std::visit(
          [&](const auto& v) {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, double>) {
              if (std::isfinite(v)) json_row.push_back(v);
              else json_row.push_back(nullptr);
            } else {
              json_row.push_back(v);
            }
          },
          cell);
    }
    rows.push_back(std::move(json_row));
  }
  doc["rows"] = std::move(rows);
  out << doc.dump(2) << '\n';
}

}  // namespace cqed
