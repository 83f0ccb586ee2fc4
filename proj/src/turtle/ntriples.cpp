#include <algorithm>
#include <fstream>
#include <sstream>

#include "pwakg/turtle/turtle.hpp"
#include "text/cursor.hpp"

namespace pwakg::turtle {

namespace {

using text::Cursor;
using text::SyntaxError;

rdf::Term read_iri_term(Cursor& cursor) {
  std::size_t start = cursor.offset();
  std::string iri = text::read_iriref(cursor);
  if (!rdf::Iri::is_valid(iri)) Cursor::fail_at(start, "malformed IRI <" + iri + ">: not absolute");
  return rdf::Iri{std::move(iri)};
}

rdf::Term read_term(Cursor& cursor, std::string_view role) {
  char c = cursor.peek();
  if (c == '<') return read_iri_term(cursor);
  if (c == '_' && cursor.peek(1) == ':') return rdf::BlankNode{text::read_blank_label(cursor)};
  if (c == '"') {
    std::size_t start = cursor.offset();
    std::string lexical = text::read_quoted(cursor);
    try {
      if (cursor.peek() == '@') {
        return rdf::Literal::make_lang(std::move(lexical), text::read_language(cursor));
      }
      if (cursor.consume("^^")) {
        rdf::Term datatype = read_iri_term(cursor);
        return rdf::Literal::make(std::move(lexical), datatype.as_iri().value);
      }
    } catch (const pwakg::StructuralError& e) {
      Cursor::fail_at(start, e.what());
    }
    return rdf::Literal::string(std::move(lexical));
  }
  if (cursor.at_end() || c == '\n') cursor.fail("unexpected end of line, expected " + std::string(role));
  cursor.fail("expected " + std::string(role));
}

}  // namespace

rdf::Graph parse_ntriples(std::string_view text) {
  rdf::Graph graph;
  std::vector<ParseDiagnostic> diagnostics;
  std::size_t line_start = 0;
  std::size_t line_number = 0;
  while (line_start < text.size()) {
    ++line_number;
    std::size_t line_end = text.find('\n', line_start);
    if (line_end == std::string_view::npos) line_end = text.size();
    std::string_view line = text.substr(line_start, line_end - line_start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);

    Cursor cursor(line);
    try {
      cursor.skip_blanks();
      if (!cursor.at_end() && cursor.peek() != '#') {
        rdf::Term subject = read_term(cursor, "subject");
        if (subject.is_literal()) Cursor::fail_at(0, "literal in subject position");
        cursor.skip_blanks();
        rdf::Term predicate = read_term(cursor, "predicate");
        if (!predicate.is_iri()) Cursor::fail_at(0, "predicate must be an IRI");
        cursor.skip_blanks();
        rdf::Term object = read_term(cursor, "object");
        cursor.skip_blanks();
        cursor.expect('.', "'.' at end of triple");
        cursor.skip_blanks();
        if (!cursor.at_end() && cursor.peek() != '#') cursor.fail("unexpected text after '.'");
        graph.insert(rdf::Triple{std::move(subject), std::move(predicate), std::move(object)});
      }
    } catch (const SyntaxError& e) {
      std::size_t column = std::min(e.offset, line.empty() ? 0 : line.size() - 1) + 1;
      diagnostics.push_back(ParseDiagnostic{line_number, column, e.message, Severity::kError});
    }
    line_start = line_end + 1;
  }
  if (!diagnostics.empty()) throw ParseError(std::move(diagnostics));
  return graph;
}

std::string serialize_ntriples(const rdf::Graph& graph) {
  std::vector<std::string> lines;
  lines.reserve(graph.size());
  for (const auto& t : graph.triple_ids()) {
    lines.push_back(graph.term(t.subject).to_ntriples() + " " +
                    graph.term(t.predicate).to_ntriples() + " " +
                    graph.term(t.object).to_ntriples() + " .");
  }
  std::sort(lines.begin(), lines.end());
  std::string out;
  for (const auto& line : lines) {
    out += line;
    out += '\n';
  }
  return out;
}

Format format_for_path(const std::filesystem::path& path) {
  return path.extension() == ".nt" ? Format::kNTriples : Format::kTurtle;
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read '" + path.string() + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

rdf::Graph read_graph_file(const std::filesystem::path& path) {
  std::string text = read_text_file(path);
  if (format_for_path(path) == Format::kNTriples) return parse_ntriples(text);
  return parse_turtle(text).graph;
}

void write_graph_file(const std::filesystem::path& path, const rdf::Graph& graph, Format format) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write '" + path.string() + "'");
  out << (format == Format::kNTriples ? serialize_ntriples(graph) : serialize_turtle(graph));
  if (!out) throw Error("write to '" + path.string() + "' failed");
}

}  // namespace pwakg::turtle
