#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "pwakg/sparql/evaluate.hpp"

namespace pwakg::sparql {

enum class ResultFormat { kCsv, kJson };

// CSV: a header of variable names, then one row per solution with terms in
// N-Triples form. JSON: {"head":{"vars":[...]},"results":{"bindings":[...]}}
// where each bound term has "type" (uri|bnode|literal), "value" and, for
// literals, "datatype" or "xml:lang".
std::string serialize_results(const std::vector<Solution>& solutions,
                              const std::vector<Variable>& projection, ResultFormat format);

struct ResultSet {
  std::vector<Variable> variables;
  std::vector<Solution> solutions;
};

// Reads the JSON format back. Throws ParseError on malformed input.
ResultSet parse_results_json(std::string_view text);

}  // namespace pwakg::sparql
