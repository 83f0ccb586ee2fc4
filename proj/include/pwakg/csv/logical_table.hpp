#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace pwakg::csv {

struct CsvOptions {
  char delimiter = ',';
  bool has_header = true;
};

// A loaded CSV file. Cells are raw strings; typing happens in the mapping
// layer. Every row has exactly one cell per column.
struct LogicalTable {
  std::string name;
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> warnings;

  std::size_t column_count() const { return columns.size(); }
  std::size_t row_count() const { return rows.size(); }
  const std::string& cell(std::size_t row, std::string_view column) const;
};

// RFC 4180 parsing of `text`. Quoted fields may contain delimiters, doubled
// quotes and line breaks. Rows shorter than the header are padded with empty
// cells (with a warning); longer rows and unbalanced quotes throw
// ParseError with the line number. Empty physical lines are skipped.
LogicalTable parse_csv(std::string_view text, std::string name, const CsvOptions& options = {});

// Reads and parses a file; the table name defaults to the file stem.
LogicalTable load_csv(const std::filesystem::path& path, const CsvOptions& options = {});

// Case-sensitive lookup. Throws NotFoundError naming the closest column
// (compared case-insensitively) when `name` is unknown.
std::size_t column_index(const LogicalTable& table, std::string_view name);

// Writes the table back as CSV, quoting only fields that need it.
std::string to_csv(const LogicalTable& table, char delimiter = ',');

}  // namespace pwakg::csv
