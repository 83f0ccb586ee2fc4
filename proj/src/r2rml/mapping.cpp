#include "pwakg/r2rml/mapping.hpp"

#include <algorithm>
#include <set>
#include <tuple>

#include "pwakg/error.hpp"

namespace pwakg::r2rml {

namespace {

using rdf::Graph;
using rdf::Term;

std::string rr(std::string_view local) { return std::string(kRr) + std::string(local); }

const std::set<std::string, std::less<>>& known_properties() {
  static const std::set<std::string, std::less<>> known = [] {
    std::set<std::string, std::less<>> s;
    for (auto local : {"logicalTable", "tableName", "subjectMap", "subject", "template", "column",
                       "constant", "class", "predicateObjectMap", "predicate", "predicateMap",
                       "objectMap", "object", "datatype", "termType"}) {
      s.insert(rr(local));
    }
    return s;
  }();
  return known;
}

class MappingReader {
 public:
  explicit MappingReader(const Graph& doc) : doc_(doc) {}

  Mapping run() {
    Mapping mapping;
    for (const auto& [prefix, ns] : doc_.prefixes()) {
      if (ns != kRr) mapping.prefixes.emplace(prefix, ns);
    }
    std::set<Term> ids;
    const Term type{rdf::Iri{std::string(rdf::vocab::kRdfType)}};
    const Term triples_map{rdf::Iri{rr("TriplesMap")}};
    for (const auto& t : doc_.triples()) {
      const std::string& p = t.predicate.as_iri().value;
      if ((t.predicate == type && t.object == triples_map) || p == rr("logicalTable") ||
          p == rr("subjectMap") || p == rr("subject")) {
        ids.insert(t.subject);
      }
    }
    for (const Term& id : ids) mapping.maps.push_back(read_triples_map(id));
    mapping.warnings = std::move(warnings_);
    return mapping;
  }

 private:
  std::vector<Term> objects(const Term& subject, std::string_view local) const {
    std::vector<Term> out;
    for (const auto& t : doc_.match(subject, Term{rdf::Iri{rr(local)}}, std::nullopt)) {
      out.push_back(t.object);
    }
    std::sort(out.begin(), out.end());
    return out;
  }

  std::optional<Term> single(const Term& subject, std::string_view local) const {
    auto values = objects(subject, local);
    if (values.empty()) return std::nullopt;
    if (values.size() > 1) {
      throw MappingError(subject.to_ntriples() + " has more than one rr:" + std::string(local));
    }
    return values.front();
  }

  void warn_unknown(const Term& node) {
    for (const auto& t : doc_.match(node, std::nullopt, std::nullopt)) {
      const std::string& p = t.predicate.as_iri().value;
      if (p.compare(0, kRr.size(), kRr) == 0 && !known_properties().contains(p)) {
        warnings_.push_back("unsupported property rr:" + p.substr(kRr.size()) + " on " +
                            node.to_ntriples() + " ignored");
      }
    }
  }

  std::string string_value(const Term& node, std::string_view local, const Term& value) const {
    if (!value.is_literal()) {
      throw MappingError("rr:" + std::string(local) + " of " + node.to_ntriples() +
                         " must be a literal");
    }
    return value.as_literal().lexical;
  }

  std::string iri_value(const Term& node, std::string_view local, const Term& value) const {
    if (!value.is_iri()) {
      throw MappingError("rr:" + std::string(local) + " of " + node.to_ntriples() +
                         " must be an IRI");
    }
    return value.as_iri().value;
  }

  TermMapSpec constant_spec(const Term& value) const {
    TermMapSpec spec;
    spec.kind = TermMapKind::kConstant;
    switch (value.kind()) {
      case rdf::TermKind::kIri:
        spec.value = value.as_iri().value;
        spec.term_type = TermType::kIri;
        break;
      case rdf::TermKind::kLiteral:
        if (!value.as_literal().language.empty()) {
          throw MappingError("language-tagged constants are not supported");
        }
        spec.value = value.as_literal().lexical;
        spec.term_type = TermType::kLiteral;
        spec.datatype = value.as_literal().datatype;
        break;
      case rdf::TermKind::kBlank:
        throw MappingError("rr:constant cannot be a blank node");
    }
    return spec;
  }

  enum class Role { kSubject, kPredicate, kObject };

  TermMapSpec read_term_map(const Term& node, Role role) {
    warn_unknown(node);
    auto tmpl = single(node, "template");
    auto column = single(node, "column");
    auto constant = single(node, "constant");
    auto term_type = single(node, "termType");
    auto datatype = single(node, "datatype");

    if (tmpl && column) {
      throw MappingError("term map " + node.to_ntriples() +
                         " has both rr:template and rr:column");
    }
    if ((tmpl || column) && constant) {
      throw MappingError("term map " + node.to_ntriples() + " mixes rr:constant with " +
                         (tmpl ? "rr:template" : "rr:column"));
    }

    TermMapSpec spec;
    if (constant) {
      spec = constant_spec(*constant);
    } else if (tmpl) {
      spec.kind = TermMapKind::kTemplate;
      spec.value = string_value(node, "template", *tmpl);
      check_template(spec.value);
      spec.term_type = TermType::kIri;
    } else if (column) {
      spec.kind = TermMapKind::kColumn;
      spec.value = string_value(node, "column", *column);
      spec.term_type = role == Role::kObject ? TermType::kLiteral : TermType::kIri;
    } else if (!term_type || iri_value(node, "termType", *term_type) != rr("BlankNode")) {
      throw MappingError("term map " + node.to_ntriples() +
                         " has no rr:template, rr:column or rr:constant");
    }

    if (role == Role::kObject && datatype && !constant) spec.term_type = TermType::kLiteral;
    if (term_type) {
      std::string type = iri_value(node, "termType", *term_type);
      if (type == rr("IRI")) {
        spec.term_type = TermType::kIri;
      } else if (type == rr("BlankNode")) {
        spec.term_type = TermType::kBlank;
      } else if (type == rr("Literal")) {
        spec.term_type = TermType::kLiteral;
      } else {
        throw MappingError("unknown rr:termType <" + type + ">");
      }
      if (constant && spec.term_type != constant_spec(*constant).term_type) {
        throw MappingError("rr:termType of " + node.to_ntriples() +
                           " disagrees with its rr:constant");
      }
    }
    if (datatype) {
      if (spec.term_type != TermType::kLiteral) {
        throw MappingError("rr:datatype on non-literal term map " + node.to_ntriples());
      }
      spec.datatype = iri_value(node, "datatype", *datatype);
    }
    if (role != Role::kObject && spec.term_type == TermType::kLiteral) {
      throw MappingError("term map " + node.to_ntriples() + " cannot generate literals");
    }
    if (role == Role::kPredicate && spec.kind != TermMapKind::kConstant) {
      throw MappingError("predicate maps must be constant IRIs");
    }
    return spec;
  }

  TriplesMapSpec read_triples_map(const Term& id) {
    warn_unknown(id);
    TriplesMapSpec map;
    map.id = id;

    auto logical_table = single(id, "logicalTable");
    if (!logical_table) throw MappingError("triples map " + id.to_ntriples() + " has no rr:logicalTable");
    warn_unknown(*logical_table);
    auto table_name = single(*logical_table, "tableName");
    if (!table_name) {
      throw MappingError("logical table of " + id.to_ntriples() + " has no rr:tableName");
    }
    map.table = string_value(*logical_table, "tableName", *table_name);

    auto subject_map = single(id, "subjectMap");
    auto subject_constant = single(id, "subject");
    if (subject_map && subject_constant) {
      throw MappingError("triples map " + id.to_ntriples() + " has rr:subjectMap and rr:subject");
    }
    if (subject_map) {
      map.subject = read_term_map(*subject_map, Role::kSubject);
      for (const Term& cls : objects(*subject_map, "class")) {
        map.subject_classes.push_back(iri_value(*subject_map, "class", cls));
      }
    } else if (subject_constant) {
      map.subject = constant_spec(*subject_constant);
      if (map.subject.term_type != TermType::kIri) {
        throw MappingError("rr:subject of " + id.to_ntriples() + " must be an IRI");
      }
    } else {
      throw MappingError("triples map " + id.to_ntriples() + " has no rr:subjectMap");
    }

    for (const Term& pom : objects(id, "predicateObjectMap")) {
      warn_unknown(pom);
      std::vector<std::string> predicates;
      for (const Term& p : objects(pom, "predicate")) {
        predicates.push_back(iri_value(pom, "predicate", p));
      }
      for (const Term& pm : objects(pom, "predicateMap")) {
        TermMapSpec spec = read_term_map(pm, Role::kPredicate);
        if (spec.term_type != TermType::kIri) {
          throw MappingError("predicate map " + pm.to_ntriples() + " must produce an IRI");
        }
        predicates.push_back(spec.value);
      }
      std::vector<TermMapSpec> object_specs;
      for (const Term& om : objects(pom, "objectMap")) {
        if (!doc_.match(om, Term{rdf::Iri{rr("parentTriplesMap")}}, std::nullopt).empty()) {
          throw MappingError("referencing object maps (rr:parentTriplesMap) are not supported");
        }
        object_specs.push_back(read_term_map(om, Role::kObject));
      }
      for (const Term& o : objects(pom, "object")) object_specs.push_back(constant_spec(o));
      if (predicates.empty()) {
        throw MappingError("predicate-object map " + pom.to_ntriples() + " has no predicate");
      }
      if (object_specs.empty()) {
        throw MappingError("predicate-object map " + pom.to_ntriples() + " has no object map");
      }
      for (const auto& p : predicates) {
        for (const auto& o : object_specs) map.pom.push_back(PredicateObjectMapSpec{p, o});
      }
    }
    // Canonical order, independent of the helper nodes' labels.
    std::stable_sort(map.pom.begin(), map.pom.end(), [](const auto& a, const auto& b) {
      auto key = [](const PredicateObjectMapSpec& p) {
        return std::tie(p.predicate, p.object.kind, p.object.value, p.object.term_type,
                        p.object.datatype);
      };
      return key(a) < key(b);
    });
    if (map.subject_classes.empty() && map.pom.empty()) {
      throw MappingError("triples map " + id.to_ntriples() +
                         " has neither rr:class nor predicate-object maps");
    }
    return map;
  }

  const Graph& doc_;
  std::vector<std::string> warnings_;
};

struct TemplatePart {
  bool is_column;
  std::string text;
};

std::vector<TemplatePart> split_template(std::string_view tmpl) {
  std::vector<TemplatePart> parts;
  std::string current;
  bool in_column = false;
  for (std::size_t i = 0; i < tmpl.size(); ++i) {
    char c = tmpl[i];
    if (c == '\\' && i + 1 < tmpl.size() &&
        (tmpl[i + 1] == '{' || tmpl[i + 1] == '}' || tmpl[i + 1] == '\\')) {
      current += tmpl[++i];
      continue;
    }
    if (c == '{') {
      if (in_column) throw MappingError("nested '{' in template \"" + std::string(tmpl) + "\"");
      if (!current.empty()) parts.push_back({false, std::move(current)});
      current.clear();
      in_column = true;
    } else if (c == '}') {
      if (!in_column) throw MappingError("unbalanced '}' in template \"" + std::string(tmpl) + "\"");
      if (current.empty()) {
        throw MappingError("empty column name in template \"" + std::string(tmpl) + "\"");
      }
      parts.push_back({true, std::move(current)});
      current.clear();
      in_column = false;
    } else {
      current += c;
    }
  }
  if (in_column) throw MappingError("unbalanced '{' in template \"" + std::string(tmpl) + "\"");
  if (!current.empty()) parts.push_back({false, std::move(current)});
  return parts;
}

bool is_iri_safe(unsigned char c) {
  return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '-' ||
         c == '.' || c == '_' || c == '~' || c == '/' || c == ':' || c >= 0x80;
}

}  // namespace

Mapping parse_mapping(const rdf::Graph& doc) { return MappingReader(doc).run(); }

void check_template(std::string_view tmpl) { split_template(tmpl); }

std::vector<std::string> template_columns(std::string_view tmpl) {
  std::vector<std::string> out;
  for (auto& part : split_template(tmpl)) {
    if (part.is_column) out.push_back(std::move(part.text));
  }
  return out;
}

std::string percent_encode_iri_value(std::string_view value) {
  static constexpr char kHex[] = "0123456789ABCDEF";
  std::string out;
  out.reserve(value.size());
  for (char ch : value) {
    auto c = static_cast<unsigned char>(ch);
    if (is_iri_safe(c)) {
      out += ch;
    } else {
      out += '%';
      out += kHex[c >> 4];
      out += kHex[c & 0xF];
    }
  }
  return out;
}

std::optional<std::string> expand_template(std::string_view tmpl, const csv::LogicalTable& table,
                                           std::size_t row, bool iri) {
  std::string out;
  for (const auto& part : split_template(tmpl)) {
    if (!part.is_column) {
      out += part.text;
      continue;
    }
    const std::string& cell = table.rows.at(row)[csv::column_index(table, part.text)];
    if (cell.empty()) return std::nullopt;
    out += iri ? percent_encode_iri_value(cell) : cell;
  }
  return out;
}

std::string blank_label_for(std::string_view value) {
  static constexpr char kHex[] = "0123456789ABCDEF";
  std::string out;
  for (char ch : value) {
    auto c = static_cast<unsigned char>(ch);
    if ((c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9')) {
      out += ch;
    } else {
      out += '_';
      out += kHex[c >> 4];
      out += kHex[c & 0xF];
    }
  }
  return out;
}

rdf::Graph mapping_to_graph(const std::vector<TriplesMapSpec>& maps,
                            const rdf::PrefixMap& prefixes) {
  rdf::Graph g;
  g.set_prefixes(prefixes);
  g.set_prefix("rr", std::string(kRr));
  auto iri = [](std::string value) { return Term{rdf::Iri{std::move(value)}}; };
  auto literal = [](std::string value) { return Term{rdf::Literal::string(std::move(value))}; };
  const Term type = iri(std::string(rdf::vocab::kRdfType));

  auto emit_term_map = [&](const Term& node, const TermMapSpec& spec) {
    switch (spec.kind) {
      case TermMapKind::kTemplate:
        g.insert(node, iri(rr("template")), literal(spec.value));
        break;
      case TermMapKind::kColumn:
        g.insert(node, iri(rr("column")), literal(spec.value));
        break;
      case TermMapKind::kConstant:
        if (spec.term_type == TermType::kIri) {
          g.insert(node, iri(rr("constant")), iri(spec.value));
        } else if (spec.term_type == TermType::kLiteral) {
          g.insert(node, iri(rr("constant")),
                   rdf::Literal{spec.value, spec.datatype.value_or(std::string(rdf::vocab::kXsdString)), {}});
        }
        break;
    }
    const char* type_name = spec.term_type == TermType::kIri     ? "IRI"
                            : spec.term_type == TermType::kBlank ? "BlankNode"
                                                                 : "Literal";
    g.insert(node, iri(rr("termType")), iri(rr(type_name)));
    if (spec.datatype && spec.kind != TermMapKind::kConstant) {
      g.insert(node, iri(rr("datatype")), iri(*spec.datatype));
    }
  };

  for (std::size_t i = 0; i < maps.size(); ++i) {
    const auto& map = maps[i];
    const std::string n = std::to_string(i);
    g.insert(map.id, type, iri(rr("TriplesMap")));
    Term table = rdf::BlankNode{"table" + n};
    g.insert(map.id, iri(rr("logicalTable")), table);
    g.insert(table, iri(rr("tableName")), literal(map.table));
    Term subject = rdf::BlankNode{"subject" + n};
    g.insert(map.id, iri(rr("subjectMap")), subject);
    emit_term_map(subject, map.subject);
    for (const auto& cls : map.subject_classes) g.insert(subject, iri(rr("class")), iri(cls));
    for (std::size_t j = 0; j < map.pom.size(); ++j) {
      const std::string nj = n + "_" + std::to_string(j);
      Term pom = rdf::BlankNode{"pom" + nj};
      Term object = rdf::BlankNode{"object" + nj};
      g.insert(map.id, iri(rr("predicateObjectMap")), pom);
      g.insert(pom, iri(rr("predicate")), iri(map.pom[j].predicate));
      g.insert(pom, iri(rr("objectMap")), object);
      emit_term_map(object, map.pom[j].object);
    }
  }
  return g;
}

}  // namespace pwakg::r2rml
