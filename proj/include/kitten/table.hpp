#pragma once

#include <ostream>
#include <string>
#include <utility>
#include <vector>

namespace kitten {

/// A numeric table with free-form metadata, written as CSV (metadata as
/// leading '#' lines) or as JSON carrying the same content. Numbers use the
/// shortest decimal form that round-trips.
struct Table {
  std::vector<std::pair<std::string, std::string>> metadata;
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

enum class TableFormat { csv, json };

TableFormat parse_format(const std::string& name);
std::string format_number(double x);
void write_csv(const Table& table, std::ostream& os);
void write_json(const Table& table, std::ostream& os);
void write_table(const Table& table, TableFormat format, std::ostream& os);

}  // namespace kitten
