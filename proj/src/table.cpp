#include "kitten/table.hpp"

#include <charconv>
#include <cmath>

#include <json.hpp>

#include "kitten/errors.hpp"

namespace kitten {

TableFormat parse_format(const std::string& name) {
  if (name == "csv") return TableFormat::csv;
  if (name == "json") return TableFormat::json;
  throw UsageError("unknown output format '" + name + "' (expected csv or json)");
}

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

void write_csv(const Table& table, std::ostream& os) {
  for (const auto& [key, value] : table.metadata) os << "# " << key << ": " << value << '\n';
  for (std::size_t i = 0; i < table.columns.size(); ++i) os << (i ? "," : "") << table.columns[i];
  os << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << format_number(row[i]);
    os << '\n';
  }
}

void write_json(const Table& table, std::ostream& os) {
  nlohmann::ordered_json j;
  j["metadata"] = nlohmann::ordered_json::object();
  for (const auto& [key, value] : table.metadata) j["metadata"][key] = value;
  j["columns"] = table.columns;
  j["rows"] = table.rows;
  os << j.dump(1) << '\n';
}

void write_table(const Table& table, TableFormat format, std::ostream& os) {
  if (format == TableFormat::csv)
    write_csv(table, os);
  else
    write_json(table, os);
}

}  // namespace kitten
