#include "pwakg/rdf/term.hpp"

#include <charconv>
#include <cmath>

#include "pwakg/error.hpp"

namespace pwakg::rdf {

namespace {

bool is_alpha(char c) { return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z'); }
bool is_digit(char c) { return c >= '0' && c <= '9'; }

// Consumes [0-9]* starting at i; returns the number of digits read.
std::size_t scan_digits(std::string_view s, std::size_t& i) {
  std::size_t start = i;
  while (i < s.size() && is_digit(s[i])) ++i;
  return i - start;
}

// [+-]? ( digits ('.' digits?)? | '.' digits ) ; returns false if malformed.
bool scan_decimal(std::string_view s, std::size_t& i, bool allow_point) {
  if (i < s.size() && (s[i] == '+' || s[i] == '-')) ++i;
  std::size_t int_digits = scan_digits(s, i);
  std::size_t frac_digits = 0;
  if (allow_point && i < s.size() && s[i] == '.') {
    ++i;
    frac_digits = scan_digits(s, i);
  }
  return int_digits + frac_digits > 0;
}

bool is_lang_tag(std::string_view tag) {
  // [a-zA-Z]+ ('-' [a-zA-Z0-9]+)*
  if (tag.empty()) return false;
  std::size_t i = 0;
  std::size_t n = 0;
  while (i < tag.size() && is_alpha(tag[i])) ++i, ++n;
  if (n == 0) return false;
  while (i < tag.size()) {
    if (tag[i] != '-') return false;
    ++i;
    n = 0;
    while (i < tag.size() && (is_alpha(tag[i]) || is_digit(tag[i]))) ++i, ++n;
    if (n == 0) return false;
  }
  return true;
}

}  // namespace

bool Iri::is_valid(std::string_view value) {
  if (value.empty()) return false;
  for (char c : value) {
    if (c == '<' || c == '>' || c == '"' || c == ' ' || c == '\t' || c == '\n' || c == '\r' ||
        c == '\f' || c == '\v') {
      return false;
    }
  }
  // scheme = ALPHA *( ALPHA / DIGIT / "+" / "-" / "." ) ":"
  if (!is_alpha(value[0])) return false;
  for (std::size_t i = 1; i < value.size(); ++i) {
    char c = value[i];
    if (c == ':') return true;
    if (!(is_alpha(c) || is_digit(c) || c == '+' || c == '-' || c == '.')) return false;
  }
  return false;
}

Iri Iri::make(std::string value) {
  if (!is_valid(value)) throw StructuralError("invalid absolute IRI '" + value + "'");
  return Iri{std::move(value)};
}

bool BlankNode::is_valid_label(std::string_view label) {
  if (label.empty()) return false;
  for (char c : label) {
    if (!(is_alpha(c) || is_digit(c) || c == '_')) return false;
  }
  return true;
}

BlankNode BlankNode::make(std::string label) {
  if (!is_valid_label(label)) throw StructuralError("invalid blank node label '" + label + "'");
  return BlankNode{std::move(label)};
}

bool is_numeric_datatype(std::string_view datatype) {
  return datatype == vocab::kXsdInteger || datatype == vocab::kXsdDecimal ||
         datatype == vocab::kXsdFloat || datatype == vocab::kXsdDouble;
}

std::optional<double> parse_numeric_lexical(std::string_view lexical, std::string_view datatype) {
  std::size_t i = 0;
  if (datatype == vocab::kXsdInteger) {
    if (!scan_decimal(lexical, i, false)) return std::nullopt;
  } else if (datatype == vocab::kXsdDecimal) {
    if (!scan_decimal(lexical, i, true)) return std::nullopt;
  } else if (datatype == vocab::kXsdFloat || datatype == vocab::kXsdDouble) {
    if (!scan_decimal(lexical, i, true)) return std::nullopt;
    if (i < lexical.size() && (lexical[i] == 'e' || lexical[i] == 'E')) {
      ++i;
      if (i < lexical.size() && (lexical[i] == '+' || lexical[i] == '-')) ++i;
      if (scan_digits(lexical, i) == 0) return std::nullopt;
    }
  } else {
    return std::nullopt;
  }
  if (i != lexical.size()) return std::nullopt;

  std::string_view digits = lexical;
  if (!digits.empty() && digits[0] == '+') digits.remove_prefix(1);
  double value = 0;
  auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), value);
  if (ec != std::errc() || ptr != digits.data() + digits.size() || !std::isfinite(value)) {
    return std::nullopt;
  }
  return value;
}

Literal Literal::make(std::string lexical, std::string datatype) {
  if (!Iri::is_valid(datatype)) {
    throw StructuralError("invalid datatype IRI '" + datatype + "'");
  }
  if (datatype == vocab::kRdfLangString) {
    throw StructuralError("rdf:langString literal requires a language tag");
  }
  if (is_numeric_datatype(datatype) && !parse_numeric_lexical(lexical, datatype)) {
    throw StructuralError("'" + lexical + "' is not a valid <" + datatype + "> value");
  }
  return Literal{std::move(lexical), std::move(datatype), {}};
}

Literal Literal::make_lang(std::string lexical, std::string language) {
  if (!is_lang_tag(language)) throw StructuralError("invalid language tag '" + language + "'");
  return Literal{std::move(lexical), std::string(vocab::kRdfLangString), std::move(language)};
}

bool Literal::is_numeric() const { return numeric_value(*this).has_value(); }

std::optional<double> numeric_value(const Literal& literal) {
  if (!is_numeric_datatype(literal.datatype)) return std::nullopt;
  return parse_numeric_lexical(literal.lexical, literal.datatype);
}

const std::string& Term::text() const {
  switch (kind()) {
    case TermKind::kBlank:
      return as_blank().label;
    case TermKind::kIri:
      return as_iri().value;
    case TermKind::kLiteral:
      break;
  }
  return as_literal().lexical;
}

std::string escape_string(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (char c : text) {
    switch (c) {
      case '"':
        out += "\\\"";
        break;
      case '\\':
        out += "\\\\";
        break;
      case '\n':
        out += "\\n";
        break;
      case '\r':
        out += "\\r";
        break;
      case '\t':
        out += "\\t";
        break;
      default:
        out += c;
    }
  }
  return out;
}

std::string Term::to_ntriples() const {
  switch (kind()) {
    case TermKind::kBlank:
      return "_:" + as_blank().label;
    case TermKind::kIri:
      return "<" + as_iri().value + ">";
    case TermKind::kLiteral:
      break;
  }
  const Literal& lit = as_literal();
  std::string out = "\"" + escape_string(lit.lexical) + "\"";
  if (!lit.language.empty()) return out + "@" + lit.language;
  return out + "^^<" + lit.datatype + ">";
}

std::strong_ordering operator<=>(const Term& a, const Term& b) { return a.value_ <=> b.value_; }

std::size_t hash_value(const Term& term) {
  std::size_t h = std::hash<std::string>{}(term.text());
  h ^= static_cast<std::size_t>(term.kind()) * 0x9e3779b97f4a7c15ULL;
  if (term.is_literal()) {
    h = h * 31 + std::hash<std::string>{}(term.as_literal().datatype);
    h = h * 31 + std::hash<std::string>{}(term.as_literal().language);
  }
  return h;
}

bool Triple::is_valid() const {
  return !subject.is_literal() && predicate.is_iri();
}

Triple Triple::make(Term subject, Term predicate, Term object) {
  Triple t{std::move(subject), std::move(predicate), std::move(object)};
  if (t.subject.is_literal()) {
    throw StructuralError("literal " + t.subject.to_ntriples() + " in subject position");
  }
  if (!t.predicate.is_iri()) {
    throw StructuralError("non-IRI " + t.predicate.to_ntriples() + " in predicate position");
  }
  return t;
}

std::string Triple::to_ntriples() const {
  return subject.to_ntriples() + " " + predicate.to_ntriples() + " " + object.to_ntriples() + " .";
}

}  // namespace pwakg::rdf
