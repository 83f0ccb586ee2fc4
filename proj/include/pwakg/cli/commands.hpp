#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pwakg/csv/logical_table.hpp"
#include "pwakg/sparql/results.hpp"
#include "pwakg/turtle/turtle.hpp"

namespace pwakg::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitViolations = 1;
inline constexpr int kExitInputError = 2;

// Summary of one command run, printed as a single JSON line.
//
// `triples_emitted` is the number of triples written (uplift, convert) or
// loaded after merging (query, validate).
struct RunReport {
  std::string command;
  std::vector<std::string> inputs;
  std::size_t triples_emitted = 0;
  std::size_t rows_skipped = 0;
  std::size_t violations = 0;
  std::int64_t duration_ms = 0;
  int exit_code = kExitOk;
};

// Fields in declaration order, no trailing newline.
std::string to_json_line(const RunReport& report);

// Where a command writes. `out` carries data (query results, violation
// lines); `err` carries diagnostics. `color` enables ANSI colors on `err`.
struct Streams {
  std::ostream& out;
  std::ostream& err;
  bool color = false;
};

struct TableArg {
  std::string name;
  std::filesystem::path path;
};

// `name=path`, or a bare path named after its file stem.
TableArg parse_table_arg(const std::string& text);

struct UpliftOptions {
  std::filesystem::path mapping;
  std::vector<TableArg> tables;
  std::filesystem::path out;
  std::optional<turtle::Format> format;  // default: from the output extension
  csv::CsvOptions csv;
};

struct QueryOptions {
  std::vector<std::filesystem::path> data;
  std::filesystem::path query;
  sparql::ResultFormat format = sparql::ResultFormat::kCsv;
  std::optional<std::size_t> limit;
};

struct ValidateOptions {
  std::vector<std::filesystem::path> data;
  bool allow_empty_records = false;
};

struct ConvertOptions {
  std::filesystem::path in;
  std::filesystem::path out;
};

// Each command catches library errors, reports them on `err` and returns
// with exit code 2. The report line goes to `out` for uplift and convert
// and to `err` for query and validate, whose `out` carries data.
RunReport run_uplift(const UpliftOptions& options, Streams streams);
RunReport run_query(const QueryOptions& options, Streams streams);
RunReport run_validate(const ValidateOptions& options, Streams streams);
RunReport run_convert(const ConvertOptions& options, Streams streams);

// Loads every file (format by extension) and merges them.
rdf::Graph load_sources(const std::vector<std::filesystem::path>& paths);

// Parses arguments and dispatches. Usage errors exit with code 2.
int main(int argc, char** argv, Streams streams);

// True unless PWA_NO_COLOR is set or stderr is not a terminal.
bool color_enabled();

}  // namespace pwakg::cli
