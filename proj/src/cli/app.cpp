#include <unistd.h>

#include <cstdlib>
#include <iostream>

#include <CLI11.hpp>

#include "pwakg/cli/commands.hpp"

namespace pwakg::cli {

namespace {

char parse_delimiter(const std::string& text) {
  if (text == "\\t" || text == "tab") return '\t';
  if (text.size() != 1) throw CLI::ValidationError("--delimiter", "expected a single character");
  return text[0];
}

}  // namespace

bool color_enabled() {
  if (std::getenv("PWA_NO_COLOR") != nullptr) return false;
  return isatty(STDERR_FILENO) != 0;
}

int main(int argc, char** argv, Streams streams) {
  CLI::App app{"Uplift photovoltaic and weather CSV data to RDF, validate and query it.", "pwakg"};
  app.require_subcommand(1);

  UpliftOptions uplift;
  std::vector<std::string> table_args;
  std::string graph_format;
  std::string delimiter = ",";
  bool no_header = false;
  auto* up = app.add_subcommand("uplift", "Run an R2RML mapping over CSV tables");
  up->add_option("--mapping", uplift.mapping, "Mapping document (Turtle)")->required();
  up->add_option("--table", table_args, "Logical table as name=path.csv")->required();
  up->add_option("--out", uplift.out, "Output graph file")->required();
  up->add_option("--format", graph_format, "Output format")->check(CLI::IsMember({"ttl", "nt"}));
  up->add_option("--delimiter", delimiter, "CSV field delimiter");
  up->add_flag("--no-header", no_header, "CSV files have no header row");

  QueryOptions query;
  std::string result_format = "csv";
  std::size_t limit = 0;
  auto* q = app.add_subcommand("query", "Evaluate a SPARQL query over merged sources");
  q->add_option("--data", query.data, "Graph file (.ttl or .nt); repeatable")->required();
  q->add_option("--query", query.query, "Query file (.rq)")->required();
  q->add_option("--format", result_format, "Result format")->check(CLI::IsMember({"csv", "json"}));
  auto* limit_opt = q->add_option("--limit", limit, "Maximum number of solutions");

  ValidateOptions validate;
  auto* v = app.add_subcommand("validate", "Check graphs against the PWA shape rules");
  v->add_option("--data", validate.data, "Graph file (.ttl or .nt); repeatable")->required();
  v->add_flag("--allow-empty-records", validate.allow_empty_records,
              "Accept records without observations or measures");

  ConvertOptions convert;
  auto* c = app.add_subcommand("convert", "Convert between Turtle and N-Triples");
  c->add_option("--in", convert.in, "Input graph file")->required();
  c->add_option("--out", convert.out, "Output graph file")->required();

  try {
    app.parse(argc, argv);
    if (up->parsed()) {
      uplift.csv.delimiter = parse_delimiter(delimiter);
      uplift.csv.has_header = !no_header;
    }
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, streams.out, streams.err);
    return code == 0 ? kExitOk : kExitInputError;
  }

  RunReport report;
  if (up->parsed()) {
    try {
      for (const auto& t : table_args) uplift.tables.push_back(parse_table_arg(t));
    } catch (const std::exception& e) {
      streams.err << "error: " << e.what() << '\n';
      return kExitInputError;
    }
    if (!graph_format.empty()) {
      uplift.format = graph_format == "nt" ? turtle::Format::kNTriples : turtle::Format::kTurtle;
    }
    report = run_uplift(uplift, streams);
  } else if (q->parsed()) {
    query.format = result_format == "json" ? sparql::ResultFormat::kJson : sparql::ResultFormat::kCsv;
    if (*limit_opt) query.limit = limit;
    report = run_query(query, streams);
  } else if (v->parsed()) {
    report = run_validate(validate, streams);
  } else {
    report = run_convert(convert, streams);
  }
  return report.exit_code;
}

}  // namespace pwakg::cli
