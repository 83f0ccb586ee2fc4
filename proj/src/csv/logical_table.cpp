#include "pwakg/csv/logical_table.hpp"

#include <algorithm>
#include <set>

#include "pwakg/error.hpp"
#include "pwakg/turtle/turtle.hpp"

namespace pwakg::csv {

namespace {

struct Record {
  std::vector<std::string> fields;
  std::size_t line;  // physical line the record starts on
};

class CsvReader {
 public:
  CsvReader(std::string_view text, char delimiter) : text_(text), delimiter_(delimiter) {
    if (text_.substr(0, 3) == "\xEF\xBB\xBF") pos_ = 3;
  }

  // Next record, or false at end of input. Empty lines are skipped.
  bool next(Record& record) {
    while (pos_ < text_.size() && (text_[pos_] == '\n' || text_[pos_] == '\r')) {
      consume_newline();
    }
    if (pos_ >= text_.size()) return false;
    record.fields.clear();
    record.line = line_;
    std::string field;
    while (true) {
      if (pos_ < text_.size() && text_[pos_] == '"') {
        read_quoted(field);
      } else {
        while (pos_ < text_.size() && text_[pos_] != delimiter_ && text_[pos_] != '\n' &&
               text_[pos_] != '\r') {
          field += text_[pos_++];
        }
      }
      record.fields.push_back(std::move(field));
      field.clear();
      if (pos_ >= text_.size()) return true;
      if (text_[pos_] == delimiter_) {
        ++pos_;
        continue;
      }
      consume_newline();
      return true;
    }
  }

 private:
  void consume_newline() {
    if (text_[pos_] == '\r' && pos_ + 1 < text_.size() && text_[pos_ + 1] == '\n') ++pos_;
    ++pos_;
    ++line_;
  }

  void read_quoted(std::string& field) {
    std::size_t open_line = line_;
    ++pos_;
    while (true) {
      if (pos_ >= text_.size()) {
        throw ParseError({ParseDiagnostic{open_line, 1, "unbalanced quotes", Severity::kError}});
      }
      char c = text_[pos_];
      if (c == '"') {
        if (pos_ + 1 < text_.size() && text_[pos_ + 1] == '"') {
          field += '"';
          pos_ += 2;
          continue;
        }
        ++pos_;
        break;
      }
      if (c == '\n') ++line_;
      field += c;
      ++pos_;
    }
    if (pos_ < text_.size() && text_[pos_] != delimiter_ && text_[pos_] != '\n' &&
        text_[pos_] != '\r') {
      throw ParseError({ParseDiagnostic{line_, 1, "unexpected character after closing quote",
                                        Severity::kError}});
    }
  }

  std::string_view text_;
  char delimiter_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
};

std::string lowercase(std::string_view s) {
  std::string out(s);
  for (char& c : out) {
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  }
  return out;
}

std::size_t edit_distance(std::string_view a, std::string_view b) {
  std::vector<std::size_t> row(b.size() + 1);
  for (std::size_t j = 0; j <= b.size(); ++j) row[j] = j;
  for (std::size_t i = 1; i <= a.size(); ++i) {
    std::size_t diagonal = row[0];
    row[0] = i;
    for (std::size_t j = 1; j <= b.size(); ++j) {
      std::size_t above = row[j];
      row[j] = std::min({row[j] + 1, row[j - 1] + 1, diagonal + (a[i - 1] == b[j - 1] ? 0 : 1)});
      diagonal = above;
    }
  }
  return row[b.size()];
}

bool needs_quotes(std::string_view field, char delimiter) {
  return field.find_first_of(std::string{delimiter, '"', '\n', '\r'}) != std::string_view::npos ||
         field.empty();
}

}  // namespace

const std::string& LogicalTable::cell(std::size_t row, std::string_view column) const {
  return rows.at(row).at(column_index(*this, column));
}

LogicalTable parse_csv(std::string_view text, std::string name, const CsvOptions& options) {
  LogicalTable table;
  table.name = std::move(name);
  CsvReader reader(text, options.delimiter);
  Record record;

  if (!reader.next(record)) return table;
  if (options.has_header) {
    std::set<std::string> seen;
    for (const auto& column : record.fields) {
      if (!seen.insert(column).second) {
        throw ParseError({ParseDiagnostic{record.line, 1, "duplicate column name '" + column + "'",
                                          Severity::kError}});
      }
    }
    table.columns = record.fields;
  } else {
    for (std::size_t i = 0; i < record.fields.size(); ++i) {
      table.columns.push_back("col" + std::to_string(i + 1));
    }
    table.rows.push_back(record.fields);
  }

  const std::size_t width = table.columns.size();
  while (reader.next(record)) {
    if (record.fields.size() > width) {
      throw ParseError({ParseDiagnostic{record.line, 1,
                                        "row has " + std::to_string(record.fields.size()) +
                                            " fields, header has " + std::to_string(width),
                                        Severity::kError}});
    }
    if (record.fields.size() < width) {
      table.warnings.push_back("line " + std::to_string(record.line) + ": " +
                               std::to_string(width - record.fields.size()) +
                               " missing trailing cell(s) filled with empty strings");
      record.fields.resize(width);
    }
    table.rows.push_back(std::move(record.fields));
    record.fields = {};
  }
  return table;
}

LogicalTable load_csv(const std::filesystem::path& path, const CsvOptions& options) {
  return parse_csv(turtle::read_text_file(path), path.stem().string(), options);
}

std::size_t column_index(const LogicalTable& table, std::string_view name) {
  for (std::size_t i = 0; i < table.columns.size(); ++i) {
    if (table.columns[i] == name) return i;
  }
  std::string message = "unknown column '" + std::string(name) + "'";
  if (!table.name.empty()) message += " in table '" + table.name + "'";
  if (!table.columns.empty()) {
    std::string wanted = lowercase(name);
    const std::string* best = nullptr;
    std::size_t best_distance = 0;
    for (const auto& column : table.columns) {
      std::size_t d = edit_distance(wanted, lowercase(column));
      if (best == nullptr || d < best_distance) {
        best = &column;
        best_distance = d;
      }
    }
    message += " (did you mean '" + *best + "'?)";
  }
  throw NotFoundError(message);
}

std::string to_csv(const LogicalTable& table, char delimiter) {
  std::string out;
  auto write_record = [&](const std::vector<std::string>& fields) {
    for (std::size_t i = 0; i < fields.size(); ++i) {
      if (i > 0) out += delimiter;
      // A lone empty field would be an empty line, which the reader skips.
      if (needs_quotes(fields[i], delimiter) && !(fields[i].empty() && fields.size() > 1)) {
        out += '"';
        for (char c : fields[i]) {
          if (c == '"') out += '"';
          out += c;
        }
        out += '"';
      } else {
        out += fields[i];
      }
    }
    out += '\n';
  };
  write_record(table.columns);
  for (const auto& row : table.rows) write_record(row);
  return out;
}

}  // namespace pwakg::csv
