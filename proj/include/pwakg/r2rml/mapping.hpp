#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pwakg/csv/logical_table.hpp"
#include "pwakg/rdf/graph.hpp"

namespace pwakg::r2rml {

inline constexpr std::string_view kRr = "http://www.w3.org/ns/r2rml#";

enum class TermMapKind { kTemplate, kColumn, kConstant };
enum class TermType { kIri, kBlank, kLiteral };

// How one RDF term is produced from a row.
//
// A blank-node map with kind kConstant and an empty value produces a fresh
// blank node per row; blank-node maps with a template or column derive the
// label from the expanded value, so maps sharing a template share the node.
struct TermMapSpec {
  TermMapKind kind = TermMapKind::kConstant;
  std::string value;  // template text, column name, IRI or literal lexical form
  TermType term_type = TermType::kIri;
  std::optional<std::string> datatype;  // literals only

  friend bool operator==(const TermMapSpec&, const TermMapSpec&) = default;
};

struct PredicateObjectMapSpec {
  std::string predicate;
  TermMapSpec object;

  friend bool operator==(const PredicateObjectMapSpec&, const PredicateObjectMapSpec&) = default;
};

struct TriplesMapSpec {
  rdf::Term id;
  std::string table;
  TermMapSpec subject;
  std::vector<std::string> subject_classes;
  std::vector<PredicateObjectMapSpec> pom;

  friend bool operator==(const TriplesMapSpec&, const TriplesMapSpec&) = default;
};

struct Mapping {
  std::vector<TriplesMapSpec> maps;  // ordered by id
  std::vector<std::string> warnings;
  rdf::PrefixMap prefixes;           // document prefixes except rr:
};

// Reads every triples map from a parsed mapping document. Supported rr:
// vocabulary: logicalTable/tableName, subjectMap/subject, template, column,
// constant, class, predicateObjectMap, predicate/predicateMap, objectMap/
// object, datatype, termType. Other rr: properties produce warnings.
// Throws MappingError for a missing logical table or subject map, for term
// maps with more than one value source, and for malformed templates.
Mapping parse_mapping(const rdf::Graph& doc);

// Inverse of parse_mapping (up to blank-node labels of the helper nodes).
rdf::Graph mapping_to_graph(const std::vector<TriplesMapSpec>& maps,
                            const rdf::PrefixMap& prefixes = {});

// Throws MappingError unless every `{` has a matching `}` around a
// non-empty column name. `\{`, `\}` and `\\` are literal characters.
void check_template(std::string_view tmpl);

// Column names referenced by a template, in order.
std::vector<std::string> template_columns(std::string_view tmpl);

// Percent-encodes every byte outside ALPHA / DIGIT / "-" / "." / "_" / "~" /
// "/" / ":"; bytes >= 0x80 are kept.
std::string percent_encode_iri_value(std::string_view value);

// Substitutes `{column}` references with the row's cells, percent-encoded
// when `iri` is true. Returns nullopt if a referenced cell is empty. Throws
// NotFoundError for unknown columns.
std::optional<std::string> expand_template(std::string_view tmpl, const csv::LogicalTable& table,
                                           std::size_t row, bool iri);

// Blank-node label for a template/column value: ASCII letters and digits
// kept, every other byte written as `_XX`.
std::string blank_label_for(std::string_view value);

struct SkippedRow {
  std::string map;    // triples map id, N-Triples form
  std::string table;
  std::size_t row;    // 0-based data row
  std::string reason;
};

struct ExecutionResult {
  rdf::Graph graph;
  std::vector<SkippedRow> skipped;
  std::vector<std::string> warnings;
};

using TableSet = std::map<std::string, csv::LogicalTable, std::less<>>;

// Runs every map over its table. A row whose subject or one of whose object
// terms cannot be generated is skipped as a whole and reported; an empty
// cell feeding an object map only drops that triple. Throws NotFoundError
// for a table name with no loaded table.
ExecutionResult execute(const std::vector<TriplesMapSpec>& maps, const TableSet& tables);

}  // namespace pwakg::r2rml
