#include "pwakg/pwa/model.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace pwakg::pwa {

namespace {

using rdf::Term;
using rdf::TermId;

Term iri(std::string_view value) { return rdf::Iri{std::string(value)}; }

std::string short_name(std::string_view value) {
  if (value.substr(0, kNamespace.size()) == kNamespace) {
    return "pwa:" + std::string(value.substr(kNamespace.size()));
  }
  if (value == kDcDate) return "dc:date";
  return "<" + std::string(value) + ">";
}

class Checker {
 public:
  Checker(const rdf::Graph& graph, const ValidationOptions& options)
      : graph_(graph), options_(options) {
    type_ = id(rdf::vocab::kRdfType);
  }

  std::vector<Violation> run() {
    check_records();
    check_observations();
    check_weather_records();
    check_weather_measures();
    check_typing();

    std::vector<Violation> out;
    for (auto& [key, messages] : found_) {
      std::string message;
      for (const auto& m : messages) {
        if (!message.empty()) message += "; ";
        message += m;
      }
      out.push_back(Violation{key.first, graph_.term(key.second), std::move(message)});
    }
    std::stable_sort(out.begin(), out.end(), [](const Violation& a, const Violation& b) {
      if (a.rule != b.rule) return a.rule < b.rule;
      return a.focus.to_ntriples() < b.focus.to_ntriples();
    });
    return out;
  }

 private:
  std::optional<TermId> id(std::string_view value) const { return graph_.find_term(iri(value)); }

  std::vector<TermId> instances(std::string_view cls) const {
    std::vector<TermId> out;
    auto c = id(cls);
    if (!type_ || !c) return out;
    graph_.for_each_match(std::nullopt, type_, c, [&](const rdf::TripleIds& t) {
      out.push_back(t.subject);
    });
    return out;
  }

  std::vector<TermId> objects(TermId subject, std::string_view predicate) const {
    std::vector<TermId> out;
    auto p = id(predicate);
    if (!p) return out;
    graph_.for_each_match(subject, p, std::nullopt, [&](const rdf::TripleIds& t) {
      out.push_back(t.object);
    });
    return out;
  }

  bool has_type(TermId node, std::string_view cls) const {
    auto c = id(cls);
    return type_ && c && graph_.contains(rdf::TripleIds{node, *type_, *c});
  }

  bool is_literal_with(TermId node, std::string_view datatype) const {
    const Term& t = graph_.term(node);
    return t.is_literal() && t.as_literal().datatype == datatype;
  }

  bool is_numeric(TermId node) const {
    const Term& t = graph_.term(node);
    return t.is_literal() && t.as_literal().is_numeric();
  }

  void report(Rule rule, TermId focus, std::string message) {
    auto& messages = found_[{rule, focus}];
    if (std::find(messages.begin(), messages.end(), message) == messages.end()) {
      messages.push_back(std::move(message));
    }
  }

  void check_records() {
    for (TermId record : instances(kPhotovoltaicRecord)) {
      auto dates = objects(record, kDcDate);
      bool dated = std::any_of(dates.begin(), dates.end(), [&](TermId d) {
        return is_literal_with(d, rdf::vocab::kXsdDateTime);
      });
      if (!dated) report(Rule::R1, record, "PhotovoltaicRecord has no dc:date typed xsd:dateTime");

      std::size_t weather = objects(record, kHasWeatherRecord).size();
      if (weather != 1) {
        report(Rule::R2, record,
               "PhotovoltaicRecord has " + std::to_string(weather) +
                   " pwa:hasWeatherRecord values, expected exactly 1");
      }
      if (!options_.allow_empty_records && objects(record, kHasObservation).empty()) {
        report(Rule::R3, record, "PhotovoltaicRecord has no pwa:hasObservation");
      }
    }
  }

  void check_observations() {
    auto p = id(kHasObservation);
    if (!p) return;
    std::set<TermId> observations;
    graph_.for_each_match(std::nullopt, p, std::nullopt,
                          [&](const rdf::TripleIds& t) { observations.insert(t.object); });
    for (TermId obs : observations) {
      if (graph_.term(obs).is_literal()) {
        report(Rule::R4, obs, "pwa:hasObservation value is a literal");
        continue;
      }
      if (!has_type(obs, kPhotovoltaicObservation)) {
        report(Rule::R4, obs, "observation is not typed pwa:PhotovoltaicObservation");
      }
      auto locations = objects(obs, kLocationId);
      if (!std::any_of(locations.begin(), locations.end(),
                       [&](TermId l) { return is_literal_with(l, rdf::vocab::kXsdString); })) {
        report(Rule::R4, obs, "observation has no string pwa:locationID");
      }
      auto values = objects(obs, kValue);
      if (!std::any_of(values.begin(), values.end(), [&](TermId v) { return is_numeric(v); })) {
        report(Rule::R4, obs, "observation has no numeric pwa:value");
      }
    }
  }

  void check_weather_records() {
    if (options_.allow_empty_records) return;
    for (TermId record : instances(kWeatherRecord)) {
      if (objects(record, kHasWeatherMeasure).empty()) {
        report(Rule::R5, record, "WeatherRecord has no pwa:hasWeatherMeasure");
      }
    }
  }

  void check_weather_measures() {
    for (TermId measure : instances(kWeatherMeasure)) {
      if (objects(measure, kName).empty()) report(Rule::R6, measure, "WeatherMeasure has no pwa:name");
      if (objects(measure, kUnit).empty()) report(Rule::R6, measure, "WeatherMeasure has no pwa:unit");
      auto values = objects(measure, kValue);
      if (!std::any_of(values.begin(), values.end(), [&](TermId v) { return is_numeric(v); })) {
        report(Rule::R6, measure, "WeatherMeasure has no numeric pwa:value");
      }
    }
  }

  // R7: subjects and objects of the typed properties carry their class.
  void check_typing() {
    struct Edge {
      std::string_view property;
      std::string_view domain;  // empty: unchecked
      std::string_view range;   // empty: unchecked (or checked by R4)
    };
    static constexpr Edge kEdges[] = {
        {kHasObservation, kPhotovoltaicRecord, {}},
        {kHasWeatherRecord, kPhotovoltaicRecord, kWeatherRecord},
        {kHasWeatherMeasure, kWeatherRecord, kWeatherMeasure},
        {kLocationId, kPhotovoltaicObservation, {}},
        {kName, kWeatherMeasure, {}},
        {kUnit, kWeatherMeasure, {}},
    };
    for (const Edge& edge : kEdges) {
      auto p = id(edge.property);
      if (!p) continue;
      graph_.for_each_match(std::nullopt, p, std::nullopt, [&](const rdf::TripleIds& t) {
        if (!edge.domain.empty() && !has_type(t.subject, edge.domain)) {
          report(Rule::R7, t.subject,
                 "subject of " + short_name(edge.property) + " is not typed " +
                     short_name(edge.domain));
        }
        if (!edge.range.empty() && !has_type(t.object, edge.range)) {
          report(Rule::R7, t.object,
                 "object of " + short_name(edge.property) + " is not typed " +
                     short_name(edge.range));
        }
      });
    }
  }

  const rdf::Graph& graph_;
  const ValidationOptions& options_;
  std::optional<TermId> type_;
  std::map<std::pair<Rule, TermId>, std::vector<std::string>> found_;
};

}  // namespace

std::string to_string(Rule rule) { return "R" + std::to_string(static_cast<int>(rule)); }

std::vector<Violation> validate(const rdf::Graph& graph, const ValidationOptions& options) {
  return Checker(graph, options).run();
}

std::string format_violation(const Violation& violation) {
  return to_string(violation.rule) + "\t" + violation.focus.to_ntriples() + "\t" + violation.message;
}

rdf::Graph ontology_graph() {
  rdf::Graph g;
  g.set_prefix("pwa", std::string(kNamespace));
  g.set_prefix("rdf", std::string(rdf::vocab::kRdf));
  g.set_prefix("rdfs", std::string(rdf::vocab::kRdfs));
  g.set_prefix("owl", std::string(rdf::vocab::kOwl));
  g.set_prefix("xsd", std::string(rdf::vocab::kXsd));

  const std::string rdfs(rdf::vocab::kRdfs);
  const std::string owl(rdf::vocab::kOwl);
  const Term type = iri(rdf::vocab::kRdfType);
  const Term label = iri(rdfs + "label");
  const Term domain = iri(rdfs + "domain");
  const Term range = iri(rdfs + "range");

  const Term ontology = iri(kNamespace);
  g.insert(ontology, type, iri(owl + "Ontology"));
  g.insert(ontology, label, rdf::Literal::string("Photovoltaic and Weather Analysis ontology"));

  auto local = [](std::string_view value) {
    return rdf::Literal::string(std::string(value.substr(kNamespace.size())));
  };
  for (auto cls : kClasses) {
    g.insert(iri(cls), type, iri(owl + "Class"));
    g.insert(iri(cls), label, local(cls));
  }

  struct PropertyDecl {
    std::string_view property;
    bool object_property;
    std::string_view domain;
    std::string_view range;
  };
  static constexpr PropertyDecl kDecls[] = {
      {kHasObservation, true, kPhotovoltaicRecord, kPhotovoltaicObservation},
      {kHasWeatherRecord, true, kPhotovoltaicRecord, kWeatherRecord},
      {kHasWeatherMeasure, true, kWeatherRecord, kWeatherMeasure},
      {kLocationId, false, kPhotovoltaicObservation, rdf::vocab::kXsdString},
      {kName, false, kWeatherMeasure, rdf::vocab::kXsdString},
      {kUnit, false, kWeatherMeasure, rdf::vocab::kXsdString},
      {kValue, false, {}, {}},
  };
  for (const auto& decl : kDecls) {
    Term p = iri(decl.property);
    g.insert(p, type, iri(owl + (decl.object_property ? "ObjectProperty" : "DatatypeProperty")));
    g.insert(p, label, local(decl.property));
    if (!decl.domain.empty()) g.insert(p, domain, iri(decl.domain));
    if (!decl.range.empty()) g.insert(p, range, iri(decl.range));
  }
  return g;
}

}  // namespace pwakg::pwa
