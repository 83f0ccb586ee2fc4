#include "pwakg/sparql/results.hpp"

#include <json.hpp>

#include "pwakg/error.hpp"

namespace pwakg::sparql {

namespace {

using json = nlohmann::ordered_json;

std::string csv_field(const std::string& value) {
  if (value.find_first_of(",\"\n\r") == std::string::npos) return value;
  std::string out = "\"";
  for (char c : value) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

json term_to_json(const rdf::Term& term) {
  json out;
  switch (term.kind()) {
    case rdf::TermKind::kIri:
      out["type"] = "uri";
      out["value"] = term.as_iri().value;
      break;
    case rdf::TermKind::kBlank:
      out["type"] = "bnode";
      out["value"] = term.as_blank().label;
      break;
    case rdf::TermKind::kLiteral: {
      const auto& lit = term.as_literal();
      out["type"] = "literal";
      out["value"] = lit.lexical;
      if (!lit.language.empty()) {
        out["xml:lang"] = lit.language;
      } else {
        out["datatype"] = lit.datatype;
      }
      break;
    }
  }
  return out;
}

rdf::Term term_from_json(const json& j) {
  const std::string type = j.at("type").get<std::string>();
  std::string value = j.at("value").get<std::string>();
  if (type == "uri") return rdf::Iri::make(std::move(value));
  if (type == "bnode") return rdf::BlankNode::make(std::move(value));
  if (type != "literal") throw StructuralError("unknown term type '" + type + "'");
  if (j.contains("xml:lang")) {
    return rdf::Literal::make_lang(std::move(value), j.at("xml:lang").get<std::string>());
  }
  std::string datatype =
      j.contains("datatype") ? j.at("datatype").get<std::string>() : std::string(rdf::vocab::kXsdString);
  return rdf::Literal::make(std::move(value), std::move(datatype));
}

}  // namespace

std::string serialize_results(const std::vector<Solution>& solutions,
                              const std::vector<Variable>& projection, ResultFormat format) {
  if (format == ResultFormat::kCsv) {
    std::string out;
    for (std::size_t i = 0; i < projection.size(); ++i) {
      if (i > 0) out += ',';
      out += csv_field(projection[i].name);
    }
    out += '\n';
    for (const auto& solution : solutions) {
      for (std::size_t i = 0; i < projection.size(); ++i) {
        if (i > 0) out += ',';
        auto it = solution.bindings.find(projection[i].name);
        if (it != solution.bindings.end()) out += csv_field(it->second.to_ntriples());
      }
      out += '\n';
    }
    return out;
  }

  json vars = json::array();
  for (const auto& v : projection) vars.push_back(v.name);
  json bindings = json::array();
  for (const auto& solution : solutions) {
    json row = json::object();
    for (const auto& v : projection) {
      auto it = solution.bindings.find(v.name);
      if (it != solution.bindings.end()) row[v.name] = term_to_json(it->second);
    }
    bindings.push_back(std::move(row));
  }
  json doc;
  doc["head"]["vars"] = std::move(vars);
  doc["results"]["bindings"] = std::move(bindings);
  return doc.dump(2) + "\n";
}

ResultSet parse_results_json(std::string_view text) {
  try {
    json doc = json::parse(text);
    ResultSet out;
    for (const auto& v : doc.at("head").at("vars")) out.variables.push_back(Variable::make(v.get<std::string>()));
    for (const auto& row : doc.at("results").at("bindings")) {
      Solution solution;
      for (const auto& [name, value] : row.items()) {
        solution.bindings.emplace(name, term_from_json(value));
      }
      out.solutions.push_back(std::move(solution));
    }
    return out;
  } catch (const json::exception& e) {
    throw ParseError({ParseDiagnostic{1, 1, std::string("malformed results JSON: ") + e.what(),
                                      Severity::kError}});
  } catch (const StructuralError& e) {
    throw ParseError({ParseDiagnostic{1, 1, std::string("malformed results JSON: ") + e.what(),
                                      Severity::kError}});
  }
}

}  // namespace pwakg::sparql
