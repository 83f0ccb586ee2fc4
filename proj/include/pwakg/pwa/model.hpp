#pragma once

#include <array>
#include <string>
#include <string_view>
#include <vector>

#include "pwakg/rdf/graph.hpp"

namespace pwakg::pwa {

inline constexpr std::string_view kNamespace = "http://example.org/pwa/ont/";
inline constexpr std::string_view kDcDate = "http://purl.org/dc/terms/date";

// Classes.
inline constexpr std::string_view kPhotovoltaicRecord = "http://example.org/pwa/ont/PhotovoltaicRecord";
inline constexpr std::string_view kPhotovoltaicObservation =
    "http://example.org/pwa/ont/PhotovoltaicObservation";
inline constexpr std::string_view kWeatherRecord = "http://example.org/pwa/ont/WeatherRecord";
inline constexpr std::string_view kWeatherMeasure = "http://example.org/pwa/ont/WeatherMeasure";

// Properties.
inline constexpr std::string_view kHasObservation = "http://example.org/pwa/ont/hasObservation";
inline constexpr std::string_view kHasWeatherRecord = "http://example.org/pwa/ont/hasWeatherRecord";
inline constexpr std::string_view kHasWeatherMeasure = "http://example.org/pwa/ont/hasWeatherMeasure";
inline constexpr std::string_view kLocationId = "http://example.org/pwa/ont/locationID";
inline constexpr std::string_view kName = "http://example.org/pwa/ont/name";
inline constexpr std::string_view kUnit = "http://example.org/pwa/ont/unit";
inline constexpr std::string_view kValue = "http://example.org/pwa/ont/value";

inline constexpr std::array<std::string_view, 4> kClasses = {
    kPhotovoltaicRecord, kPhotovoltaicObservation, kWeatherRecord, kWeatherMeasure};
inline constexpr std::array<std::string_view, 7> kProperties = {
    kHasObservation, kHasWeatherRecord, kHasWeatherMeasure, kLocationId, kName, kUnit, kValue};

// Shape rules checked by `validate`:
//   R1  every PhotovoltaicRecord has a dc:date typed xsd:dateTime
//   R2  every PhotovoltaicRecord has exactly one hasWeatherRecord
//   R3  every PhotovoltaicRecord has at least one hasObservation
//   R4  every hasObservation object is a PhotovoltaicObservation with a
//       string locationID and a numeric value
//   R5  every WeatherRecord has at least one hasWeatherMeasure
//   R6  every WeatherMeasure has a name, a unit and a numeric value
//   R7  domain/range typing of the object properties, locationID, name
//       and unit
enum class Rule { R1 = 1, R2, R3, R4, R5, R6, R7 };

std::string to_string(Rule rule);

struct Violation {
  Rule rule;
  rdf::Term focus;
  std::string message;

  friend bool operator==(const Violation&, const Violation&) = default;
};

struct ValidationOptions {
  // Relaxes R3 and R5 from "at least one" to "any number".
  bool allow_empty_records = false;
};

// One violation per failing (rule, focus) pair, ordered by rule then by the
// focus term's N-Triples form. Empty iff the graph conforms.
std::vector<Violation> validate(const rdf::Graph& graph, const ValidationOptions& options = {});

// `RULE<TAB>focus<TAB>message`, focus in N-Triples form.
std::string format_violation(const Violation& violation);

// The ontology as RDF: 4 owl:Class and 7 property declarations with the
// domains and ranges the class descriptions fix. pwa:value has no declared
// domain because both observations and weather measures use it.
rdf::Graph ontology_graph();

}  // namespace pwakg::pwa
