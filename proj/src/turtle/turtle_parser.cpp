#include <utility>

#include "pwakg/turtle/turtle.hpp"
#include "text/cursor.hpp"

namespace pwakg::turtle {

namespace {

using rdf::Term;
using text::Cursor;
using text::SyntaxError;

class TurtleParser {
 public:
  TurtleParser(std::string_view text, std::optional<rdf::Iri> base) : cursor_(text) {
    if (base) base_ = base->value;
  }

  TurtleDocument run() {
    while (true) {
      cursor_.skip_space();
      if (cursor_.at_end()) break;
      std::size_t statement_start = cursor_.offset();
      try {
        statement();
      } catch (const SyntaxError& e) {
        add_diagnostic(e.offset, e.message, Severity::kError);
        recover(statement_start);
      } catch (const StructuralError& e) {
        add_diagnostic(statement_start, e.what(), Severity::kError);
        recover(statement_start);
      }
    }
    for (const auto& d : diagnostics_) {
      if (d.severity == Severity::kError) throw ParseError(std::move(diagnostics_));
    }
    TurtleDocument doc;
    doc.graph = std::move(graph_);
    if (base_) doc.base = rdf::Iri{*base_};
    doc.diagnostics = std::move(diagnostics_);
    return doc;
  }

 private:
  void add_diagnostic(std::size_t offset, std::string message, Severity severity) {
    auto [line, column] = text::line_column(cursor_.text(), offset);
    diagnostics_.push_back(ParseDiagnostic{line, column, std::move(message), severity});
  }

  // Skips past the '.' that ends the failed statement. Quoted strings and
  // IRIs on the same line are stepped over so their dots do not count.
  void recover(std::size_t statement_start) {
    if (cursor_.offset() <= statement_start) cursor_.seek(statement_start + 1);
    while (!cursor_.at_end()) {
      char c = cursor_.peek();
      if (c == '"' || c == '\'' || c == '<') {
        char close = c == '<' ? '>' : c;
        cursor_.get();
        while (!cursor_.at_end() && cursor_.peek() != close && cursor_.peek() != '\n') {
          if (cursor_.peek() == '\\') cursor_.get();
          cursor_.get();
        }
        cursor_.get();
        continue;
      }
      if (c == '#') {
        while (!cursor_.at_end() && cursor_.peek() != '\n') cursor_.get();
        continue;
      }
      cursor_.get();
      if (c == '.') {
        char next = cursor_.peek();
        if (cursor_.at_end() || next == ' ' || next == '\t' || next == '\n' || next == '\r' ||
            next == '#') {
          return;
        }
      }
    }
  }

  void statement() {
    if (cursor_.consume("@prefix")) {
      prefix_directive(true);
    } else if (cursor_.consume("@base")) {
      base_directive(true);
    } else if (cursor_.peek() == '@') {
      cursor_.fail("unknown directive");
    } else if (cursor_.consume_keyword("PREFIX")) {
      prefix_directive(false);
    } else if (cursor_.consume_keyword("BASE")) {
      base_directive(false);
    } else {
      triples();
    }
  }

  void prefix_directive(bool turtle_style) {
    cursor_.skip_space();
    std::string prefix = text::read_prefix_label(cursor_);
    cursor_.skip_space();
    std::size_t iri_offset = cursor_.offset();
    std::string iri = text::resolve_iri(text::read_iriref(cursor_), base_, iri_offset);
    if (turtle_style) {
      cursor_.skip_space();
      cursor_.expect('.', "'.' after @prefix directive");
    }
    prefixes_[prefix] = iri;
    graph_.set_prefix(std::move(prefix), std::move(iri));
  }

  void base_directive(bool turtle_style) {
    cursor_.skip_space();
    std::size_t iri_offset = cursor_.offset();
    std::string iri = text::resolve_iri(text::read_iriref(cursor_), base_, iri_offset);
    if (turtle_style) {
      cursor_.skip_space();
      cursor_.expect('.', "'.' after @base directive");
    }
    base_ = std::move(iri);
  }

  void triples() {
    Term subject = read_subject();
    predicate_object_list(subject);
    cursor_.skip_space();
    cursor_.expect('.', "'.' at end of statement");
  }

  void predicate_object_list(const Term& subject) {
    while (true) {
      cursor_.skip_space();
      Term predicate = read_verb();
      while (true) {
        cursor_.skip_space();
        std::size_t object_offset = cursor_.offset();
        Term object = read_object();
        try {
          graph_.insert(rdf::Triple{subject, predicate, object});
        } catch (const StructuralError& e) {
          Cursor::fail_at(object_offset, e.what());
        }
        cursor_.skip_space();
        if (!cursor_.consume(',')) break;
      }
      // One or more ';' may be followed by another verb or end the list.
      if (!cursor_.consume(';')) return;
      while (true) {
        cursor_.skip_space();
        if (!cursor_.consume(';')) break;
      }
      cursor_.skip_space();
      if (cursor_.peek() == '.' || cursor_.at_end()) return;
    }
  }

  Term read_subject() {
    char c = cursor_.peek();
    if (c == '[' || c == '(') {
      cursor_.fail("anonymous blank nodes and collections are not supported");
    }
    if (c == '"' || c == '\'' || is_number_start()) cursor_.fail("literal in subject position");
    if (c == '_' && cursor_.peek(1) == ':') return blank();
    if (c == '<') return iri_ref();
    return prefixed_name("subject");
  }

  Term read_verb() {
    if (cursor_.peek() == 'a') {
      char next = cursor_.peek(1);
      if (!text::is_name_char(next) && next != ':' && next != '.' && !is_digit(next)) {
        cursor_.get();
        return rdf::Iri{std::string(rdf::vocab::kRdfType)};
      }
    }
    if (cursor_.peek() == '<') return iri_ref();
    if (cursor_.peek() == '_' && cursor_.peek(1) == ':') {
      cursor_.fail("blank node in predicate position");
    }
    return prefixed_name("predicate");
  }

  Term read_object() {
    char c = cursor_.peek();
    if (c == '<') return iri_ref();
    if (c == '_' && cursor_.peek(1) == ':') return blank();
    if (c == '"' || c == '\'') return literal();
    if (c == '[' || c == '(') {
      cursor_.fail("anonymous blank nodes and collections are not supported");
    }
    if (is_number_start()) {
      std::size_t start = cursor_.offset();
      if (auto number = text::read_number(cursor_)) {
        return make_literal(start, std::move(number->lexical), std::string(number->datatype));
      }
    }
    if (cursor_.consume_keyword("true")) {
      return rdf::Literal{"true", std::string(rdf::vocab::kXsdBoolean), {}};
    }
    if (cursor_.consume_keyword("false")) {
      return rdf::Literal{"false", std::string(rdf::vocab::kXsdBoolean), {}};
    }
    return prefixed_name("object");
  }

  Term literal() {
    std::size_t start = cursor_.offset();
    std::string lexical = text::read_quoted(cursor_);
    if (cursor_.peek() == '@') {
      std::string language = text::read_language(cursor_);
      try {
        return rdf::Literal::make_lang(std::move(lexical), std::move(language));
      } catch (const StructuralError& e) {
        Cursor::fail_at(start, e.what());
      }
    }
    if (cursor_.consume("^^")) {
      Term datatype = cursor_.peek() == '<' ? iri_ref() : prefixed_name("datatype");
      return make_literal(start, std::move(lexical), datatype.as_iri().value);
    }
    return rdf::Literal::string(std::move(lexical));
  }

  Term make_literal(std::size_t offset, std::string lexical, std::string datatype) {
    try {
      return rdf::Literal::make(std::move(lexical), std::move(datatype));
    } catch (const StructuralError& e) {
      Cursor::fail_at(offset, e.what());
    }
  }

  Term iri_ref() {
    std::size_t start = cursor_.offset();
    std::string iri = text::read_iriref(cursor_);
    return rdf::Iri{text::resolve_iri(iri, base_, start)};
  }

  Term blank() { return rdf::BlankNode{text::read_blank_label(cursor_)}; }

  Term prefixed_name(std::string_view role) {
    std::size_t start = cursor_.offset();
    auto name = text::read_prefixed_name(cursor_);
    if (!name) {
      if (cursor_.at_end()) cursor_.fail("unexpected end of input, expected " + std::string(role));
      cursor_.fail("expected " + std::string(role));
    }
    auto it = prefixes_.find(name->prefix);
    if (it == prefixes_.end()) Cursor::fail_at(start, "undefined prefix '" + name->prefix + "'");
    std::string iri = it->second + name->local;
    if (!rdf::Iri::is_valid(iri)) Cursor::fail_at(start, "malformed IRI '" + iri + "'");
    return rdf::Iri{std::move(iri)};
  }

  bool is_number_start() const {
    char c = cursor_.peek();
    if (is_digit(c)) return true;
    char next = cursor_.peek(1);
    if (c == '.') return is_digit(next);
    if (c == '+' || c == '-') return is_digit(next) || next == '.';
    return false;
  }

  static bool is_digit(char c) { return c >= '0' && c <= '9'; }

  Cursor cursor_;
  std::optional<std::string> base_;
  std::map<std::string, std::string> prefixes_;
  rdf::Graph graph_;
  std::vector<ParseDiagnostic> diagnostics_;
};

}  // namespace

TurtleDocument parse_turtle(std::string_view text, std::optional<rdf::Iri> base) {
  return TurtleParser(text, std::move(base)).run();
}

}  // namespace pwakg::turtle
