#include <variant>

#include "pwakg/error.hpp"
#include "pwakg/r2rml/mapping.hpp"

namespace pwakg::r2rml {

namespace {

using rdf::Term;

// Outcome of generating one term for one row.
struct NoTerm {};           // a referenced cell is empty (SQL NULL analogue)
struct Failed {
  std::string reason;
};
using Generated = std::variant<Term, NoTerm, Failed>;

class RowGenerator {
 public:
  RowGenerator(const csv::LogicalTable& table, std::size_t map_ordinal)
      : table_(table), map_ordinal_(map_ordinal) {}

  // `slot` distinguishes fresh blank nodes of one row: 0 for the subject,
  // k+1 for the k-th predicate-object map.
  Generated generate(const TermMapSpec& spec, std::size_t row, std::size_t slot) const {
    std::string value;
    switch (spec.kind) {
      case TermMapKind::kConstant:
        if (spec.term_type == TermType::kBlank) {
          std::string label = "b" + std::to_string(map_ordinal_) + "r" + std::to_string(row);
          if (slot > 0) label += "o" + std::to_string(slot - 1);
          return Term{rdf::BlankNode{std::move(label)}};
        }
        value = spec.value;
        break;
      case TermMapKind::kColumn: {
        value = table_.rows[row][csv::column_index(table_, spec.value)];
        if (value.empty()) return NoTerm{};
        break;
      }
      case TermMapKind::kTemplate: {
        auto expanded = expand_template(spec.value, table_, row, spec.term_type == TermType::kIri);
        if (!expanded) return NoTerm{};
        value = std::move(*expanded);
        break;
      }
    }

    switch (spec.term_type) {
      case TermType::kIri:
        if (!rdf::Iri::is_valid(value)) return Failed{"'" + value + "' is not an absolute IRI"};
        return Term{rdf::Iri{std::move(value)}};
      case TermType::kBlank:
        return Term{rdf::BlankNode{blank_label_for(value)}};
      case TermType::kLiteral:
        break;
    }
    try {
      return Term{rdf::Literal::make(
          std::move(value), spec.datatype.value_or(std::string(rdf::vocab::kXsdString)))};
    } catch (const StructuralError& e) {
      return Failed{e.what()};
    }
  }

 private:
  const csv::LogicalTable& table_;
  std::size_t map_ordinal_;
};

// Unknown columns are a mapping error, not a per-row failure; check them up
// front so a bad mapping fails before producing anything.
void check_columns(const TriplesMapSpec& map, const csv::LogicalTable& table) {
  auto check = [&](const TermMapSpec& spec) {
    if (spec.kind == TermMapKind::kColumn) csv::column_index(table, spec.value);
    if (spec.kind == TermMapKind::kTemplate) {
      for (const auto& column : template_columns(spec.value)) csv::column_index(table, column);
    }
  };
  check(map.subject);
  for (const auto& pom : map.pom) check(pom.object);
}

}  // namespace

ExecutionResult execute(const std::vector<TriplesMapSpec>& maps, const TableSet& tables) {
  ExecutionResult result;
  const Term type{rdf::Iri{std::string(rdf::vocab::kRdfType)}};

  for (const auto& map : maps) {
    if (!tables.contains(map.table)) {
      throw NotFoundError("table '" + map.table + "' referenced by " + map.id.to_ntriples() +
                          " was not supplied");
    }
    check_columns(map, tables.find(map.table)->second);
  }

  std::vector<rdf::Triple> pending;
  for (std::size_t ordinal = 0; ordinal < maps.size(); ++ordinal) {
    const auto& map = maps[ordinal];
    const auto& table = tables.find(map.table)->second;
    RowGenerator generator(table, ordinal);

    for (std::size_t row = 0; row < table.rows.size(); ++row) {
      auto skip = [&](std::string reason) {
        result.warnings.push_back(map.id.to_ntriples() + " row " + std::to_string(row) +
                                  " skipped: " + reason);
        result.skipped.push_back(SkippedRow{map.id.to_ntriples(), map.table, row, std::move(reason)});
      };

      Generated subject = generator.generate(map.subject, row, 0);
      if (std::holds_alternative<NoTerm>(subject)) {
        skip("empty cell in subject map");
        continue;
      }
      if (auto* failed = std::get_if<Failed>(&subject)) {
        skip("subject: " + failed->reason);
        continue;
      }
      const Term& s = std::get<Term>(subject);

      pending.clear();
      for (const auto& cls : map.subject_classes) {
        pending.push_back(rdf::Triple{s, type, Term{rdf::Iri{cls}}});
      }
      bool ok = true;
      for (std::size_t k = 0; k < map.pom.size(); ++k) {
        Generated object = generator.generate(map.pom[k].object, row, k + 1);
        if (std::holds_alternative<NoTerm>(object)) continue;
        if (auto* failed = std::get_if<Failed>(&object)) {
          skip("object of <" + map.pom[k].predicate + ">: " + failed->reason);
          ok = false;
          break;
        }
        pending.push_back(
            rdf::Triple{s, Term{rdf::Iri{map.pom[k].predicate}}, std::get<Term>(std::move(object))});
      }
      if (!ok) continue;
      for (const auto& t : pending) result.graph.insert(t);
    }
  }
  return result;
}

}  // namespace pwakg::r2rml
