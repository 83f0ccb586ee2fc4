#include <algorithm>
#include <set>

#include "pwakg/error.hpp"
#include "pwakg/sparql/query.hpp"
#include "text/cursor.hpp"

namespace pwakg::sparql {

namespace {

using rdf::Term;
using text::Cursor;
using text::SyntaxError;

bool is_var_start(char c) {
  return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || c == '_';
}
bool is_var_char(char c) { return is_var_start(c) || (c >= '0' && c <= '9'); }

class QueryParser {
 public:
  explicit QueryParser(std::string_view text) : cursor_(text) {}

  Query run() {
    try {
      parse();
    } catch (const SyntaxError& e) {
      auto [line, column] = text::line_column(cursor_.text(), e.offset);
      throw ParseError({ParseDiagnostic{line, column, e.message, Severity::kError}});
    }
    return std::move(query_);
  }

 private:
  void parse() {
    prologue();
    skip();
    if (!cursor_.consume_keyword("SELECT")) cursor_.fail("expected SELECT");
    std::vector<std::pair<Variable, std::size_t>> selected;
    bool select_all = false;
    skip();
    if (cursor_.consume('*')) {
      select_all = true;
    } else {
      while (true) {
        skip();
        char c = cursor_.peek();
        if (c != '?' && c != '$') break;
        std::size_t offset = cursor_.offset();
        selected.emplace_back(variable(), offset);
      }
      if (selected.empty()) cursor_.fail("expected '*' or at least one variable after SELECT");
    }
    skip();
    cursor_.consume_keyword("WHERE");
    skip();
    cursor_.expect('{', "'{'");
    group();
    modifiers();
    skip();
    if (!cursor_.at_end()) cursor_.fail("unexpected text after query");

    std::vector<Variable> in_pattern = pattern_variables();
    auto occurs = [&](const Variable& v) {
      return std::find(in_pattern.begin(), in_pattern.end(), v) != in_pattern.end();
    };
    if (select_all) {
      query_.projection = in_pattern;
    } else {
      for (auto& [v, offset] : selected) {
        if (!occurs(v)) Cursor::fail_at(offset, "unknown variable ?" + v.name + " in SELECT");
        query_.projection.push_back(std::move(v));
      }
    }
    for (std::size_t i = 0; i < query_.order_by.size(); ++i) {
      if (!occurs(query_.order_by[i].variable)) {
        Cursor::fail_at(order_offsets_[i],
                        "unknown variable ?" + query_.order_by[i].variable.name + " in ORDER BY");
      }
    }
  }

  std::vector<Variable> pattern_variables() const {
    std::vector<Variable> out;
    for (const auto& p : query_.bgp) {
      for (const PatternTerm* t : {&p.subject, &p.predicate, &p.object}) {
        const Variable* v = as_variable(*t);
        if (v && std::find(out.begin(), out.end(), *v) == out.end()) out.push_back(*v);
      }
    }
    return out;
  }

  void skip() { cursor_.skip_space(); }

  void prologue() {
    while (true) {
      skip();
      if (cursor_.consume_keyword("PREFIX")) {
        skip();
        std::string prefix = text::read_prefix_label(cursor_);
        skip();
        std::size_t offset = cursor_.offset();
        std::string iri = text::resolve_iri(text::read_iriref(cursor_), base_, offset);
        query_.prefixes[prefix] = iri;
      } else if (cursor_.consume_keyword("BASE")) {
        skip();
        std::size_t offset = cursor_.offset();
        base_ = text::resolve_iri(text::read_iriref(cursor_), base_, offset);
      } else {
        return;
      }
    }
  }

  Variable variable() {
    std::size_t start = cursor_.offset();
    char sigil = cursor_.get();
    if (sigil != '?' && sigil != '$') Cursor::fail_at(start, "expected a variable");
    std::string name;
    if (!is_var_start(cursor_.peek())) Cursor::fail_at(start, "malformed variable name");
    while (is_var_char(cursor_.peek())) name += cursor_.get();
    return Variable{std::move(name)};
  }

  void group() {
    while (true) {
      skip();
      if (cursor_.at_end()) cursor_.fail("unexpected end of input, expected '}'");
      if (cursor_.consume('}')) return;
      if (cursor_.consume('.')) continue;
      if (cursor_.consume_keyword("FILTER")) {
        filter();
        continue;
      }
      if (cursor_.peek() == '{') cursor_.fail("nested group patterns are not supported");
      std::string_view rest = cursor_.rest();
      for (auto keyword : {"OPTIONAL", "UNION", "MINUS", "GRAPH", "SERVICE", "BIND", "VALUES"}) {
        Cursor probe(rest);
        if (probe.consume_keyword(keyword)) {
          cursor_.fail(std::string(keyword) + " is not supported");
        }
      }
      triples_block();
    }
  }

  void triples_block() {
    PatternTerm subject = pattern_term(Slot::kSubject);
    while (true) {
      skip();
      PatternTerm predicate = verb();
      while (true) {
        skip();
        PatternTerm object = pattern_term(Slot::kObject);
        query_.bgp.push_back(TriplePattern{subject, predicate, std::move(object)});
        skip();
        if (!cursor_.consume(',')) break;
      }
      if (!cursor_.consume(';')) return;
      while (true) {
        skip();
        if (!cursor_.consume(';')) break;
      }
      skip();
      char c = cursor_.peek();
      if (c == '.' || c == '}' || cursor_.at_end()) return;
      if (cursor_.rest().size() >= 6) {
        Cursor probe(cursor_.rest());
        if (probe.consume_keyword("FILTER")) return;
      }
    }
  }

  enum class Slot { kSubject, kPredicate, kObject, kFilter };

  PatternTerm verb() {
    if (cursor_.peek() == 'a') {
      char next = cursor_.peek(1);
      if (!text::is_name_char(next) && next != ':' && !(next >= '0' && next <= '9')) {
        cursor_.get();
        return Term{rdf::Iri{std::string(rdf::vocab::kRdfType)}};
      }
    }
    return pattern_term(Slot::kPredicate);
  }

  PatternTerm pattern_term(Slot slot) {
    std::size_t start = cursor_.offset();
    char c = cursor_.peek();
    if (c == '?' || c == '$') return variable();
    if (cursor_.at_end()) cursor_.fail("unexpected end of input");
    if (c == '_' && cursor_.peek(1) == ':') cursor_.fail("blank nodes in queries are not supported");
    if (c == '[' || c == '(') cursor_.fail("anonymous blank nodes and collections are not supported");
    Term term = constant();
    if (term.is_literal() && (slot == Slot::kSubject || slot == Slot::kPredicate)) {
      Cursor::fail_at(start, "literal in " +
                                 std::string(slot == Slot::kSubject ? "subject" : "predicate") +
                                 " position");
    }
    return term;
  }

  Term constant() {
    std::size_t start = cursor_.offset();
    char c = cursor_.peek();
    if (c == '<') {
      std::string iri = text::read_iriref(cursor_);
      return rdf::Iri{text::resolve_iri(iri, base_, start)};
    }
    if (c == '"' || c == '\'') {
      std::string lexical = text::read_quoted(cursor_);
      try {
        if (cursor_.peek() == '@') {
          return rdf::Literal::make_lang(std::move(lexical), text::read_language(cursor_));
        }
        if (cursor_.consume("^^")) {
          Term datatype = constant();
          if (!datatype.is_iri()) Cursor::fail_at(start, "datatype must be an IRI");
          return rdf::Literal::make(std::move(lexical), datatype.as_iri().value);
        }
      } catch (const StructuralError& e) {
        Cursor::fail_at(start, e.what());
      }
      return rdf::Literal::string(std::move(lexical));
    }
    if (auto number = text::read_number(cursor_)) {
      return rdf::Literal{std::move(number->lexical), std::string(number->datatype), {}};
    }
    if (cursor_.consume_keyword("true")) return rdf::Literal{"true", std::string(rdf::vocab::kXsdBoolean), {}};
    if (cursor_.consume_keyword("false")) return rdf::Literal{"false", std::string(rdf::vocab::kXsdBoolean), {}};
    auto name = text::read_prefixed_name(cursor_);
    if (!name) cursor_.fail("expected a term");
    auto it = query_.prefixes.find(name->prefix);
    if (it == query_.prefixes.end()) Cursor::fail_at(start, "undefined prefix '" + name->prefix + "'");
    std::string iri = it->second + name->local;
    if (!rdf::Iri::is_valid(iri)) Cursor::fail_at(start, "malformed IRI '" + iri + "'");
    return rdf::Iri{std::move(iri)};
  }

  void filter() {
    skip();
    std::size_t start = cursor_.offset();
    cursor_.expect('(', "'(' after FILTER");
    FilterExpr expr = comparison();
    skip();
    cursor_.expect(')', "')'");
    if (!as_variable(expr.lhs) && !as_variable(expr.rhs)) {
      Cursor::fail_at(start, "FILTER must reference a variable");
    }
    query_.filters.push_back(std::move(expr));
  }

  FilterExpr comparison() {
    skip();
    if (cursor_.consume('(')) {
      FilterExpr inner = comparison();
      skip();
      cursor_.expect(')', "')'");
      return inner;
    }
    FilterExpr expr;
    expr.lhs = pattern_term(Slot::kFilter);
    skip();
    expr.op = compare_op();
    skip();
    expr.rhs = pattern_term(Slot::kFilter);
    return expr;
  }

  CompareOp compare_op() {
    if (cursor_.consume(">=")) return CompareOp::kGreaterEqual;
    if (cursor_.consume("<=")) return CompareOp::kLessEqual;
    if (cursor_.consume("!=")) return CompareOp::kNotEqual;
    if (cursor_.consume('>')) return CompareOp::kGreater;
    if (cursor_.consume('<')) return CompareOp::kLess;
    if (cursor_.consume('=')) return CompareOp::kEqual;
    cursor_.fail("expected a comparison operator (>, >=, <, <=, =, !=)");
  }

  void modifiers() {
    skip();
    if (cursor_.consume_keyword("ORDER")) {
      skip();
      if (!cursor_.consume_keyword("BY")) cursor_.fail("expected BY after ORDER");
      while (true) {
        skip();
        std::size_t offset = cursor_.offset();
        SortDirection direction = SortDirection::kAscending;
        bool wrapped = false;
        if (cursor_.consume_keyword("ASC")) {
          wrapped = true;
        } else if (cursor_.consume_keyword("DESC")) {
          wrapped = true;
          direction = SortDirection::kDescending;
        }
        if (wrapped) {
          skip();
          cursor_.expect('(', "'('");
          skip();
          offset = cursor_.offset();
          Variable v = variable();
          skip();
          cursor_.expect(')', "')'");
          query_.order_by.push_back(OrderKey{std::move(v), direction});
        } else if (cursor_.peek() == '?' || cursor_.peek() == '$') {
          query_.order_by.push_back(OrderKey{variable(), direction});
        } else {
          break;
        }
        order_offsets_.push_back(offset);
      }
      if (query_.order_by.empty()) cursor_.fail("expected an ORDER BY key");
    }
    skip();
    if (cursor_.consume_keyword("LIMIT")) {
      skip();
      std::size_t start = cursor_.offset();
      std::string digits;
      while (cursor_.peek() >= '0' && cursor_.peek() <= '9') digits += cursor_.get();
      if (digits.empty() || digits.size() > 18) Cursor::fail_at(start, "expected a LIMIT count");
      query_.limit = std::stoull(digits);
    }
  }

  Cursor cursor_;
  Query query_;
  std::optional<std::string> base_;
  std::vector<std::size_t> order_offsets_;
};

std::string render(const PatternTerm& t) {
  if (const Variable* v = as_variable(t)) return "?" + v->name;
  return std::get<Term>(t).to_ntriples();
}

}  // namespace

bool Variable::is_valid_name(std::string_view name) {
  if (name.empty() || !is_var_start(name[0])) return false;
  return std::all_of(name.begin(), name.end(), is_var_char);
}

Variable Variable::make(std::string name) {
  if (!is_valid_name(name)) throw StructuralError("invalid variable name '" + name + "'");
  return Variable{std::move(name)};
}

std::string_view to_string(CompareOp op) {
  switch (op) {
    case CompareOp::kGreater: return ">";
    case CompareOp::kGreaterEqual: return ">=";
    case CompareOp::kLess: return "<";
    case CompareOp::kLessEqual: return "<=";
    case CompareOp::kEqual: return "=";
    case CompareOp::kNotEqual: return "!=";
  }
  return "?";
}

Query parse_query(std::string_view text) { return QueryParser(text).run(); }

std::string to_string(const Query& query) {
  std::string out;
  for (const auto& [prefix, ns] : query.prefixes) out += "PREFIX " + prefix + ": <" + ns + ">\n";
  out += "SELECT";
  for (const auto& v : query.projection) out += " ?" + v.name;
  out += "\nWHERE {\n";
  for (const auto& p : query.bgp) {
    out += "  " + render(p.subject) + " " + render(p.predicate) + " " + render(p.object) + " .\n";
  }
  for (const auto& f : query.filters) {
    out += "  FILTER (" + render(f.lhs) + " " + std::string(to_string(f.op)) + " " + render(f.rhs) +
           ")\n";
  }
  out += "}\n";
  if (!query.order_by.empty()) {
    out += "ORDER BY";
    for (const auto& key : query.order_by) {
      out += key.direction == SortDirection::kAscending ? " ASC(?" : " DESC(?";
      out += key.variable.name + ")";
    }
    out += "\n";
  }
  if (query.limit) out += "LIMIT " + std::to_string(*query.limit) + "\n";
  return out;
}

}  // namespace pwakg::sparql
