#pragma once

#include <compare>
#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "pwakg/rdf/graph.hpp"
#include "pwakg/sparql/query.hpp"

namespace pwakg::sparql {

struct Solution {
  std::map<std::string, rdf::Term> bindings;

  const rdf::Term& at(const std::string& variable) const { return bindings.at(variable); }
  friend bool operator==(const Solution&, const Solution&) = default;
  friend auto operator<=>(const Solution&, const Solution&) = default;
};

struct EvaluationStats {
  // Filter evaluations that hit a type error (e.g. `>` on a non-numeric
  // literal) and were therefore treated as false.
  std::size_t filter_errors = 0;
  std::size_t solutions_before_limit = 0;
};

// All assignments under which every pattern matches a triple of `graph` and
// every filter holds; stably ordered by ORDER BY, truncated by LIMIT, then
// projected. Duplicates are kept.
//
// Patterns are joined by backtracking. At each step the pattern with the
// smallest index estimate under the current bindings is taken next.
std::vector<Solution> evaluate(const Query& query, const rdf::Graph& graph);
std::vector<Solution> evaluate(const Query& query, const rdf::Graph& graph, EvaluationStats& stats);

// With `numeric`, literals of numeric XSD types compare by value and sort
// after IRIs but before all other literals. Otherwise, and for everything
// else: blank < IRI < literal, then by lexical form (datatype and language
// break ties).
std::weak_ordering compare_terms(const rdf::Term& a, const rdf::Term& b, bool numeric);

}  // namespace pwakg::sparql
