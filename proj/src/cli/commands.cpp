#include "pwakg/cli/commands.hpp"

#include <chrono>
#include <exception>
#include <ostream>

#include <json.hpp>

#include "pwakg/error.hpp"
#include "pwakg/pwa/model.hpp"
#include "pwakg/r2rml/mapping.hpp"
#include "pwakg/sparql/evaluate.hpp"
#include "pwakg/sparql/query.hpp"

namespace pwakg::cli {

namespace {

namespace fs = std::filesystem;

constexpr const char* kRed = "\x1b[31m";
constexpr const char* kYellow = "\x1b[33m";
constexpr const char* kReset = "\x1b[0m";

// An error tied to an input file, so diagnostics can name it.
class InputError : public Error {
 public:
  InputError(fs::path path, const ParseError& cause)
      : Error(cause.what()), path_(std::move(path)), diagnostics_(cause.diagnostics()) {}

  const fs::path& path() const { return path_; }
  const std::vector<ParseDiagnostic>& diagnostics() const { return diagnostics_; }

 private:
  fs::path path_;
  std::vector<ParseDiagnostic> diagnostics_;
};

template <typename Fn>
auto with_path(const fs::path& path, Fn&& fn) {
  try {
    return fn();
  } catch (const ParseError& e) {
    throw InputError(path, e);
  }
}

void print_label(Streams& s, const char* color, const char* label) {
  if (s.color) {
    s.err << color << label << kReset;
  } else {
    s.err << label;
  }
}

void print_error(Streams& s, const std::string& message) {
  print_label(s, kRed, "error: ");
  s.err << message << '\n';
}

void print_warning(Streams& s, const std::string& message) {
  print_label(s, kYellow, "warning: ");
  s.err << message << '\n';
}

class Timer {
 public:
  Timer() : start_(std::chrono::steady_clock::now()) {}
  std::int64_t elapsed_ms() const {
    return std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() -
                                                                 start_)
        .count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

// Runs `body`, turning library and I/O errors into exit code 2, and prints
// the finished report to `report_stream`.
template <typename Body>
RunReport run(RunReport report, Streams& s, std::ostream& report_stream, Body&& body) {
  Timer timer;
  try {
    body(report);
  } catch (const InputError& e) {
    for (const auto& d : e.diagnostics()) {
      std::string where = e.path().string() + ":" + std::to_string(d.line) + ":" +
                          std::to_string(d.column) + ": ";
      if (d.severity == Severity::kError) {
        print_error(s, where + d.message);
      } else {
        print_warning(s, where + d.message);
      }
    }
    report.exit_code = kExitInputError;
  } catch (const std::exception& e) {
    print_error(s, e.what());
    report.exit_code = kExitInputError;
  }
  report.duration_ms = timer.elapsed_ms();
  report_stream << to_json_line(report) << '\n';
  report_stream.flush();
  return report;
}

}  // namespace

std::string to_json_line(const RunReport& report) {
  nlohmann::ordered_json j;
  j["command"] = report.command;
  j["inputs"] = report.inputs;
  j["triples_emitted"] = report.triples_emitted;
  j["rows_skipped"] = report.rows_skipped;
  j["violations"] = report.violations;
  j["duration_ms"] = report.duration_ms;
  j["exit_code"] = report.exit_code;
  return j.dump();
}

TableArg parse_table_arg(const std::string& text) {
  auto eq = text.find('=');
  if (eq == std::string::npos) return TableArg{fs::path(text).stem().string(), text};
  if (eq == 0) throw Error("table argument '" + text + "' has an empty name");
  return TableArg{text.substr(0, eq), text.substr(eq + 1)};
}

rdf::Graph load_sources(const std::vector<fs::path>& paths) {
  std::vector<rdf::Graph> graphs;
  graphs.reserve(paths.size());
  for (const auto& path : paths) {
    graphs.push_back(with_path(path, [&] { return turtle::read_graph_file(path); }));
  }
  if (graphs.size() == 1) return std::move(graphs.front());
  return rdf::merge(graphs);
}

RunReport run_uplift(const UpliftOptions& options, Streams s) {
  RunReport report;
  report.command = "uplift";
  report.inputs.push_back(options.mapping.string());
  for (const auto& t : options.tables) report.inputs.push_back(t.path.string());

  return run(std::move(report), s, s.out, [&](RunReport& r) {
    auto doc = with_path(options.mapping, [&] {
      return turtle::parse_turtle(turtle::read_text_file(options.mapping));
    });
    auto mapping = r2rml::parse_mapping(doc.graph);
    for (const auto& w : mapping.warnings) print_warning(s, options.mapping.string() + ": " + w);

    r2rml::TableSet tables;
    for (const auto& t : options.tables) {
      auto table = with_path(t.path, [&] { return csv::load_csv(t.path, options.csv); });
      table.name = t.name;
      for (const auto& w : table.warnings) print_warning(s, t.path.string() + ": " + w);
      if (!tables.emplace(t.name, std::move(table)).second) {
        throw Error("table '" + t.name + "' given more than once");
      }
    }

    auto result = r2rml::execute(mapping.maps, tables);
    for (const auto& w : result.warnings) print_warning(s, w);  // includes skipped rows
    result.graph.set_prefixes(mapping.prefixes);
    auto format = options.format.value_or(turtle::format_for_path(options.out));
    turtle::write_graph_file(options.out, result.graph, format);
    r.triples_emitted = result.graph.size();
    r.rows_skipped = result.skipped.size();
  });
}

RunReport run_query(const QueryOptions& options, Streams s) {
  RunReport report;
  report.command = "query";
  for (const auto& p : options.data) report.inputs.push_back(p.string());
  report.inputs.push_back(options.query.string());

  return run(std::move(report), s, s.err, [&](RunReport& r) {
    if (options.data.empty()) throw Error("query needs at least one --data file");
    rdf::Graph graph = load_sources(options.data);
    graph.freeze();
    r.triples_emitted = graph.size();

    auto query = with_path(options.query, [&] {
      return sparql::parse_query(turtle::read_text_file(options.query));
    });
    if (options.limit) query.limit = std::min(query.limit.value_or(*options.limit), *options.limit);

    sparql::EvaluationStats stats;
    auto solutions = sparql::evaluate(query, graph, stats);
    s.out << sparql::serialize_results(solutions, query.projection, options.format);
    s.out.flush();
  });
}

RunReport run_validate(const ValidateOptions& options, Streams s) {
  RunReport report;
  report.command = "validate";
  for (const auto& p : options.data) report.inputs.push_back(p.string());

  return run(std::move(report), s, s.err, [&](RunReport& r) {
    if (options.data.empty()) throw Error("validate needs at least one --data file");
    rdf::Graph graph = load_sources(options.data);
    graph.freeze();
    r.triples_emitted = graph.size();

    auto violations = pwa::validate(graph, {.allow_empty_records = options.allow_empty_records});
    for (const auto& v : violations) s.out << pwa::format_violation(v) << '\n';
    s.out.flush();
    r.violations = violations.size();
    if (!violations.empty()) r.exit_code = kExitViolations;
  });
}

RunReport run_convert(const ConvertOptions& options, Streams s) {
  RunReport report;
  report.command = "convert";
  report.inputs.push_back(options.in.string());

  return run(std::move(report), s, s.out, [&](RunReport& r) {
    rdf::Graph graph = with_path(options.in, [&] { return turtle::read_graph_file(options.in); });
    turtle::write_graph_file(options.out, graph, turtle::format_for_path(options.out));
    r.triples_emitted = graph.size();
  });
}

}  // namespace pwakg::cli
