#pragma once

#include <compare>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "pwakg/rdf/graph.hpp"

namespace pwakg::sparql {

struct Variable {
  std::string name;  // without the leading '?'

  static bool is_valid_name(std::string_view name);
  static Variable make(std::string name);

  friend auto operator<=>(const Variable&, const Variable&) = default;
};

// A triple-pattern or filter position: a fixed term or a variable.
using PatternTerm = std::variant<rdf::Term, Variable>;

inline const Variable* as_variable(const PatternTerm& t) { return std::get_if<Variable>(&t); }

struct TriplePattern {
  PatternTerm subject;
  PatternTerm predicate;
  PatternTerm object;

  friend bool operator==(const TriplePattern&, const TriplePattern&) = default;
};

enum class CompareOp { kGreater, kGreaterEqual, kLess, kLessEqual, kEqual, kNotEqual };

std::string_view to_string(CompareOp op);

struct FilterExpr {
  CompareOp op = CompareOp::kEqual;
  PatternTerm lhs;
  PatternTerm rhs;

  friend bool operator==(const FilterExpr&, const FilterExpr&) = default;
};

enum class SortDirection { kAscending, kDescending };

struct OrderKey {
  Variable variable;
  SortDirection direction = SortDirection::kAscending;

  friend bool operator==(const OrderKey&, const OrderKey&) = default;
};

// SELECT queries over a single basic graph pattern. `SELECT *` is expanded
// at parse time to the pattern's variables in order of first appearance.
struct Query {
  rdf::PrefixMap prefixes;
  std::vector<Variable> projection;
  std::vector<TriplePattern> bgp;
  std::vector<FilterExpr> filters;
  std::vector<OrderKey> order_by;
  std::optional<std::size_t> limit;

  friend bool operator==(const Query&, const Query&) = default;
};

// Parses PREFIX/BASE, SELECT (vars or *), WHERE { triples, FILTER(a op b) },
// ORDER BY (?v | ASC(?v) | DESC(?v))+, LIMIT n. Keywords are
// case-insensitive. Bare numbers are typed xsd:integer/decimal/double and
// plain strings xsd:string. Throws ParseError (with line/column) on syntax
// errors, undefined prefixes, and SELECT/ORDER BY variables that do not
// occur in the pattern.
Query parse_query(std::string_view text);

// Renders a query that parse_query reads back to an equal Query. Terms are
// written in full N-Triples form.
std::string to_string(const Query& query);

}  // namespace pwakg::sparql
