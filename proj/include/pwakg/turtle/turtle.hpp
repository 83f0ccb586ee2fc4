#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pwakg/error.hpp"
#include "pwakg/rdf/graph.hpp"

namespace pwakg::turtle {

struct TurtleDocument {
  rdf::Graph graph;
  std::optional<rdf::Iri> base;
  std::vector<ParseDiagnostic> diagnostics;  // warnings only; errors throw
};

// Parses the supported Turtle subset: @prefix/@base (and SPARQL-style
// PREFIX/BASE), prefixed names, the `a` keyword, `;` and `,` lists, single-
// or double-quoted short literals with `@lang` or `^^datatype`, bare
// numbers and booleans, and `_:label` blank nodes.
//
// Not supported: collections, `[ ]` blank nodes, triple-quoted literals.
//
// Errors are collected statement by statement; if any occurred a ParseError
// carrying all of them is thrown.
TurtleDocument parse_turtle(std::string_view text, std::optional<rdf::Iri> base = std::nullopt);

// Prefix directives (sorted), a blank line, then one block per subject in
// term order; predicates grouped with `;` (rdf:type first, as `a`) and
// objects with `,`. Blank nodes are always written as `_:label`.
std::string serialize_turtle(const rdf::Graph& graph);

// One triple per line with full IRIs; `#` comments and blank lines allowed.
rdf::Graph parse_ntriples(std::string_view text);

// Canonical form: one line per triple, lines sorted bytewise, each ending in
// `\n`. Every literal carries an explicit datatype unless language-tagged.
std::string serialize_ntriples(const rdf::Graph& graph);

enum class Format { kTurtle, kNTriples };

// `.nt` selects N-Triples, anything else Turtle.
Format format_for_path(const std::filesystem::path& path);

rdf::Graph read_graph_file(const std::filesystem::path& path);
void write_graph_file(const std::filesystem::path& path, const rdf::Graph& graph, Format format);

std::string read_text_file(const std::filesystem::path& path);

}  // namespace pwakg::turtle
