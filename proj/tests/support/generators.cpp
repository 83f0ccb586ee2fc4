#include "generators.hpp"

#include <algorithm>
#include <cstdio>
#include <map>
#include <numeric>
#include <set>

#include "pwakg/pwa/model.hpp"

namespace pwakg::gen {

namespace {

using rdf::Term;
using sparql::PatternTerm;
using sparql::Variable;

constexpr const char* kEx = "http://example.org/g/";
constexpr const char* kData = "http://example.org/data/";

std::size_t pick(Rng& rng, std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng); }
bool chance(Rng& rng, double p) { return std::bernoulli_distribution(p)(rng); }

Term iri(const std::string& value) { return rdf::Iri{value}; }
Term iri(std::string_view value) { return rdf::Iri{std::string(value)}; }

std::string format_fixed(double value, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, value);
  return buf;
}

const std::string kVariables[] = {"a", "b", "c", "d"};

PatternTerm maybe_variable(Rng& rng, Term constant, double p_var) {
  if (chance(rng, p_var)) return Variable{kVariables[pick(rng, 4)]};
  return constant;
}

void collect(const PatternTerm& t, std::vector<Variable>& vars) {
  if (const auto* v = sparql::as_variable(t)) {
    if (std::find(vars.begin(), vars.end(), *v) == vars.end()) vars.push_back(*v);
  }
}

std::vector<Variable> pattern_variables(const std::vector<sparql::TriplePattern>& bgp) {
  std::vector<Variable> vars;
  for (const auto& p : bgp) {
    collect(p.subject, vars);
    collect(p.predicate, vars);
    collect(p.object, vars);
  }
  return vars;
}

sparql::CompareOp random_op(Rng& rng) { return static_cast<sparql::CompareOp>(pick(rng, 6)); }

// Fills projection, filters, ORDER BY and LIMIT around a finished BGP.
void decorate(sparql::Query& q, Rng& rng, const std::vector<Term>& filter_constants) {
  std::vector<Variable> vars = pattern_variables(q.bgp);
  if (vars.empty()) {
    // Keep the query valid: make the first subject a variable.
    q.bgp.front().subject = Variable{"a"};
    vars.push_back(Variable{"a"});
  }
  std::shuffle(vars.begin(), vars.end(), rng);
  q.projection.assign(vars.begin(), vars.begin() + 1 + pick(rng, vars.size()));

  if (chance(rng, 0.6)) {
    sparql::FilterExpr f;
    f.op = random_op(rng);
    f.lhs = vars[pick(rng, vars.size())];
    if (vars.size() > 1 && chance(rng, 0.3)) {
      f.rhs = vars[pick(rng, vars.size())];
    } else {
      f.rhs = filter_constants[pick(rng, filter_constants.size())];
    }
    if (chance(rng, 0.5)) std::swap(f.lhs, f.rhs);
    q.filters.push_back(std::move(f));
  }
  if (chance(rng, 0.4)) {
    std::size_t keys = 1 + pick(rng, std::min<std::size_t>(2, q.projection.size()));
    for (std::size_t i = 0; i < keys; ++i) {
      q.order_by.push_back({q.projection[i], chance(rng, 0.5) ? sparql::SortDirection::kAscending
                                                               : sparql::SortDirection::kDescending});
    }
  }
  if (chance(rng, 0.25)) q.limit = pick(rng, 6);
}

class UnionFind {
 public:
  std::size_t find(const std::string& x) {
    auto [it, inserted] = index_.emplace(x, parent_.size());
    if (inserted) parent_.push_back(parent_.size());
    std::size_t i = it->second;
    while (parent_[i] != i) i = parent_[i] = parent_[parent_[i]];
    return i;
  }
  void unite(const std::string& a, const std::string& b) { parent_[find(a)] = find(b); }

 private:
  std::map<std::string, std::size_t> index_;
  std::vector<std::size_t> parent_;
};

}  // namespace

Term random_numeric_literal(Rng& rng) {
  switch (pick(rng, 4)) {
    case 0:
      return rdf::Literal{std::to_string(static_cast<int>(pick(rng, 21)) - 10),
                          std::string(rdf::vocab::kXsdInteger), {}};
    case 1:
      return rdf::Literal{format_fixed(static_cast<double>(pick(rng, 2001)) / 100.0 - 10.0, 2),
                          std::string(rdf::vocab::kXsdDecimal), {}};
    case 2:
      return rdf::Literal{format_fixed(static_cast<double>(pick(rng, 101)) / 10.0, 1),
                          std::string(rdf::vocab::kXsdFloat), {}};
    default:
      return rdf::Literal{std::to_string(pick(rng, 10)) + "e" + std::to_string(pick(rng, 3)),
                          std::string(rdf::vocab::kXsdDouble), {}};
  }
}

Term random_subject(Rng& rng, const GraphShape& shape) {
  if (shape.blanks > 0 && chance(rng, 0.3)) return rdf::BlankNode{"n" + std::to_string(pick(rng, shape.blanks))};
  return iri(kEx + std::string("s") + std::to_string(pick(rng, shape.subjects)));
}

Term random_predicate(Rng& rng, const GraphShape& shape) {
  return iri(kEx + std::string("p") + std::to_string(pick(rng, shape.predicates)));
}

Term random_object(Rng& rng, const GraphShape& shape) {
  if (!shape.literals || chance(rng, 0.5)) return random_subject(rng, shape);
  switch (pick(rng, 4)) {
    case 0: return rdf::Literal::string(std::string(1, static_cast<char>('x' + pick(rng, 3))));
    case 1: return rdf::Literal{"tag", std::string(rdf::vocab::kRdfLangString), chance(rng, 0.5) ? "en" : "de"};
    default: return random_numeric_literal(rng);
  }
}

rdf::Graph random_graph(Rng& rng, const GraphShape& shape) {
  rdf::Graph g;
  std::size_t n = pick(rng, shape.max_triples + 1);
  for (std::size_t i = 0; i < n; ++i) {
    g.insert(random_subject(rng, shape), random_predicate(rng, shape), random_object(rng, shape));
  }
  if (chance(rng, 0.5)) g.set_prefix("ex", kEx);
  return g;
}

rdf::Graph relabel_blanks(const rdf::Graph& g, Rng& rng) {
  std::vector<rdf::BlankNode> blanks = g.blank_nodes();
  std::vector<std::size_t> perm(blanks.size());
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), rng);
  std::map<std::string, std::string> rename;
  for (std::size_t i = 0; i < blanks.size(); ++i) rename[blanks[i].label] = "x" + std::to_string(perm[i]);
  auto map_term = [&](const Term& t) -> Term {
    if (!t.is_blank()) return t;
    return rdf::BlankNode{rename.at(t.as_blank().label)};
  };
  std::vector<rdf::Triple> triples = g.triples();
  std::shuffle(triples.begin(), triples.end(), rng);
  rdf::Graph out;
  for (const auto& t : triples) out.insert(map_term(t.subject), t.predicate, map_term(t.object));
  out.set_prefixes(g.prefixes());
  return out;
}

sparql::Query random_query(Rng& rng, const GraphShape& shape) {
  GraphShape ground = shape;
  ground.blanks = 0;  // queries cannot mention blank nodes
  sparql::Query q;
  std::size_t patterns = 1 + pick(rng, 3);
  for (std::size_t i = 0; i < patterns; ++i) {
    sparql::TriplePattern p{maybe_variable(rng, random_subject(rng, ground), 0.75),
                            maybe_variable(rng, random_predicate(rng, ground), 0.4),
                            maybe_variable(rng, random_object(rng, ground), 0.7)};
    q.bgp.push_back(std::move(p));
  }
  std::vector<Term> constants;
  for (int i = 0; i < 4; ++i) constants.push_back(random_numeric_literal(rng));
  constants.push_back(rdf::Literal::string("x"));
  constants.push_back(random_subject(rng, ground));
  decorate(q, rng, constants);
  return q;
}

sparql::Query random_query_ast(Rng& rng) {
  GraphShape ground;
  ground.blanks = 0;
  sparql::Query q = random_query(rng, ground);
  if (chance(rng, 0.5)) q.prefixes["ex"] = kEx;
  if (chance(rng, 0.3)) q.prefixes["pwa"] = std::string(pwa::kNamespace);
  return q;
}

rdf::Graph random_pwa_graph(Rng& rng, const PwaShape& shape) {
  rdf::Graph g;
  g.set_prefix("pwa", std::string(pwa::kNamespace));
  g.set_prefix("data", kData);
  g.set_prefix("xsd", std::string(rdf::vocab::kXsd));
  g.set_prefix("dc", "http://purl.org/dc/terms/");

  const Term type = iri(rdf::vocab::kRdfType);
  const Term pv_record = iri(pwa::kPhotovoltaicRecord);
  const Term pv_observation = iri(pwa::kPhotovoltaicObservation);
  const Term weather_record = iri(pwa::kWeatherRecord);
  const Term weather_measure = iri(pwa::kWeatherMeasure);
  static const std::string kMeasures[][2] = {
      {"cloud cover", "%"}, {"temperature", "Celsius"}, {"humidity", "%"}, {"wind speed", "km/h"}};

  std::set<std::size_t> weather_done;
  std::size_t records = 1 + pick(rng, shape.max_records);
  for (std::size_t r = 0; r < records; ++r) {
    std::size_t date_index = pick(rng, shape.dates);
    std::string date = timestamp_after(date_index * 24);
    Term record = iri(kData + std::to_string(r + 1));
    Term weather = iri(kData + std::string("wr_") + date);

    g.insert(record, type, pv_record);
    g.insert(record, iri(pwa::kDcDate), rdf::Literal{date, std::string(rdf::vocab::kXsdDateTime), {}});
    g.insert(record, iri(pwa::kHasWeatherRecord), weather);
    std::size_t observations = 1 + pick(rng, shape.max_observations);
    for (std::size_t o = 0; o < observations; ++o) {
      Term obs = rdf::BlankNode{"o" + std::to_string(r + 1) + "_" + std::to_string(o)};
      g.insert(record, iri(pwa::kHasObservation), obs);
      g.insert(obs, type, pv_observation);
      g.insert(obs, iri(pwa::kLocationId), rdf::Literal::string(std::to_string(100 + pick(rng, 400))));
      g.insert(obs, iri(pwa::kValue),
               rdf::Literal{format_fixed(static_cast<double>(pick(rng, 5000)) / 100000.0, 5),
                            std::string(rdf::vocab::kXsdFloat), {}});
    }

    if (!weather_done.insert(date_index).second) continue;
    g.insert(weather, type, weather_record);
    std::size_t measures = 1 + pick(rng, std::min<std::size_t>(shape.max_measures, 4));
    for (std::size_t m = 0; m < measures; ++m) {
      Term measure = rdf::BlankNode{"w" + std::to_string(date_index) + "_" + std::to_string(m)};
      g.insert(weather, iri(pwa::kHasWeatherMeasure), measure);
      g.insert(measure, type, weather_measure);
      g.insert(measure, iri(pwa::kName), rdf::Literal::string(kMeasures[m][0]));
      g.insert(measure, iri(pwa::kUnit), rdf::Literal::string(kMeasures[m][1]));
      g.insert(measure, iri(pwa::kValue), random_numeric_literal(rng));
    }
  }
  return g;
}

std::vector<rdf::Graph> shard_by_blank_component(const rdf::Graph& g, std::size_t count, Rng& rng) {
  UnionFind components;
  for (const auto& t : g.triples()) {
    if (t.subject.is_blank() && t.object.is_blank()) {
      components.unite(t.subject.as_blank().label, t.object.as_blank().label);
    }
  }
  std::map<std::size_t, std::size_t> shard_of_component;
  std::vector<rdf::Graph> shards(count);
  for (auto& s : shards) s.set_prefixes(g.prefixes());
  for (const auto& t : g.triples()) {
    std::size_t shard;
    const Term* blank = t.subject.is_blank() ? &t.subject : (t.object.is_blank() ? &t.object : nullptr);
    if (blank == nullptr) {
      shard = pick(rng, count);
    } else {
      std::size_t c = components.find(blank->as_blank().label);
      auto it = shard_of_component.find(c);
      if (it == shard_of_component.end()) it = shard_of_component.emplace(c, pick(rng, count)).first;
      shard = it->second;
    }
    shards[shard].insert(t);
  }
  return shards;
}

std::string sample_query_with_thresholds(double cloud_cover, double pv_value) {
  return "PREFIX pwa: <http://example.org/pwa/ont/>\n"
         "PREFIX xsd: <http://www.w3.org/2001/XMLSchema#>\n"
         "\n"
         "SELECT ?PVRecord ?CloudCoverValue ?PVValue\n"
         "WHERE\n"
         "{\n"
         "  ?PVRecord a pwa:PhotovoltaicRecord ;\n"
         "        pwa:hasWeatherRecord ?WeatherRec ;\n"
         "        pwa:hasObservation ?PVObservation .\n"
         "\n"
         "  ?WeatherRec pwa:hasWeatherMeasure ?WMeasure .\n"
         "\n"
         "  ?WMeasure pwa:name \"cloud cover\" ;\n"
         "        pwa:value ?CloudCoverValue .\n"
         "  FILTER (?CloudCoverValue > " +
         format_fixed(cloud_cover, 3) +
         ") .\n"
         "\n"
         "  ?PVObservation a pwa:PhotovoltaicObservation ;\n"
         "        pwa:value ?PVValue .\n"
         "  FILTER (?PVValue > " +
         format_fixed(pv_value, 5) +
         ") .\n"
         "}\n"
         "ORDER BY ?CloudCoverValue\n";
}

std::string timestamp_after(std::size_t hours) {
  static constexpr int kDays[] = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
  int year = 2014, month = 0;
  std::size_t day = hours / 24;
  int hour = static_cast<int>(hours % 24);
  for (;;) {
    bool leap = (year % 4 == 0 && year % 100 != 0) || year % 400 == 0;
    std::size_t in_month = static_cast<std::size_t>(kDays[month] + (month == 1 && leap ? 1 : 0));
    if (day < in_month) break;
    day -= in_month;
    if (++month == 12) {
      month = 0;
      ++year;
    }
  }
  char buf[64];
  std::snprintf(buf, sizeof buf, "%04d-%02d-%02dT%02d:00:00", year, month + 1, static_cast<int>(day) + 1,
                hour);
  return buf;
}

SyntheticCsv synthetic_csv(std::size_t rows, std::uint64_t seed) {
  Rng rng(seed);
  SyntheticCsv out;
  out.pv = "record_id,date,location_id,value\n";
  out.weather = "date,cloud_cover\n";
  for (std::size_t i = 0; i < rows; ++i) {
    std::string date = timestamp_after(i);
    out.pv += std::to_string(i + 1) + "," + date + "," + std::to_string(100 + pick(rng, 900)) + "," +
              format_fixed(static_cast<double>(pick(rng, 10000)) / 100000.0, 5) + "\n";
    out.weather += date + "," + std::to_string(pick(rng, 101)) + "\n";
  }
  return out;
}

}  // namespace pwakg::gen
