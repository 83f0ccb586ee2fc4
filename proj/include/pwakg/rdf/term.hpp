#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <variant>

namespace pwakg::rdf {

namespace vocab {
inline constexpr std::string_view kRdf = "http://www.w3.org/1999/02/22-rdf-syntax-ns#";
inline constexpr std::string_view kRdfType = "http://www.w3.org/1999/02/22-rdf-syntax-ns#type";
inline constexpr std::string_view kRdfLangString =
    "http://www.w3.org/1999/02/22-rdf-syntax-ns#langString";
inline constexpr std::string_view kRdfs = "http://www.w3.org/2000/01/rdf-schema#";
inline constexpr std::string_view kOwl = "http://www.w3.org/2002/07/owl#";
inline constexpr std::string_view kXsd = "http://www.w3.org/2001/XMLSchema#";
inline constexpr std::string_view kXsdString = "http://www.w3.org/2001/XMLSchema#string";
inline constexpr std::string_view kXsdInteger = "http://www.w3.org/2001/XMLSchema#integer";
inline constexpr std::string_view kXsdDecimal = "http://www.w3.org/2001/XMLSchema#decimal";
inline constexpr std::string_view kXsdFloat = "http://www.w3.org/2001/XMLSchema#float";
inline constexpr std::string_view kXsdDouble = "http://www.w3.org/2001/XMLSchema#double";
inline constexpr std::string_view kXsdBoolean = "http://www.w3.org/2001/XMLSchema#boolean";
inline constexpr std::string_view kXsdDateTime = "http://www.w3.org/2001/XMLSchema#dateTime";
}  // namespace vocab

// Absolute IRI. Construct through `Iri::make`, which enforces the invariants;
// the raw constructor is for values already known to be valid.
struct Iri {
  std::string value;

  static Iri make(std::string value);
  static bool is_valid(std::string_view value);

  friend auto operator<=>(const Iri&, const Iri&) = default;
};

struct BlankNode {
  std::string label;

  static BlankNode make(std::string label);
  static bool is_valid_label(std::string_view label);

  friend auto operator<=>(const BlankNode&, const BlankNode&) = default;
};

struct Literal {
  std::string lexical;
  std::string datatype;  // IRI string; rdf:langString iff language is set
  std::string language;  // empty when absent

  // Validates the datatype IRI, the language/datatype pairing, and the
  // lexical form of numeric XSD types.
  static Literal make(std::string lexical, std::string datatype);
  static Literal make_lang(std::string lexical, std::string language);
  static Literal string(std::string lexical) {
    return Literal{std::move(lexical), std::string(vocab::kXsdString), {}};
  }

  bool is_numeric() const;

  friend auto operator<=>(const Literal&, const Literal&) = default;
};

bool is_numeric_datatype(std::string_view datatype);

// Numeric value of a literal with a numeric XSD datatype whose lexical form
// is valid; nullopt otherwise.
std::optional<double> numeric_value(const Literal& literal);

// Strict lexical check for the numeric XSD types.
std::optional<double> parse_numeric_lexical(std::string_view lexical, std::string_view datatype);

// Kinds are declared in their query ordering: blank < IRI < literal.
enum class TermKind : std::uint8_t { kBlank = 0, kIri = 1, kLiteral = 2 };

class Term {
 public:
  Term() : value_(Iri{}) {}
  Term(Iri iri) : value_(std::move(iri)) {}              // NOLINT
  Term(BlankNode blank) : value_(std::move(blank)) {}    // NOLINT
  Term(Literal literal) : value_(std::move(literal)) {}  // NOLINT

  static Term iri(std::string value) { return Iri::make(std::move(value)); }
  static Term blank(std::string label) { return BlankNode::make(std::move(label)); }
  static Term literal(std::string lexical, std::string_view datatype) {
    return Literal::make(std::move(lexical), std::string(datatype));
  }

  TermKind kind() const { return static_cast<TermKind>(value_.index()); }
  bool is_iri() const { return kind() == TermKind::kIri; }
  bool is_blank() const { return kind() == TermKind::kBlank; }
  bool is_literal() const { return kind() == TermKind::kLiteral; }

  const Iri& as_iri() const { return std::get<Iri>(value_); }
  const BlankNode& as_blank() const { return std::get<BlankNode>(value_); }
  const Literal& as_literal() const { return std::get<Literal>(value_); }

  // IRI string, blank label, or literal lexical form.
  const std::string& text() const;

  // N-Triples rendering (`<iri>`, `_:label`, `"lex"^^<dt>` or `"lex"@lang`).
  std::string to_ntriples() const;

  friend bool operator==(const Term&, const Term&) = default;
  // Kind first, then the variant's members.
  friend std::strong_ordering operator<=>(const Term& a, const Term& b);

 private:
  // Index order must match TermKind.
  std::variant<BlankNode, Iri, Literal> value_;
};

struct Triple {
  Term subject;
  Term predicate;
  Term object;

  // Throws StructuralError unless subject is IRI/blank and predicate is IRI.
  static Triple make(Term subject, Term predicate, Term object);
  bool is_valid() const;
  bool has_blank() const {
    return subject.is_blank() || predicate.is_blank() || object.is_blank();
  }

  std::string to_ntriples() const;

  friend bool operator==(const Triple&, const Triple&) = default;
  friend auto operator<=>(const Triple&, const Triple&) = default;
};

// N-Triples string escaping (`\"`, `\\`, `\n`, `\r`, `\t`).
std::string escape_string(std::string_view text);

std::size_t hash_value(const Term& term);

}  // namespace pwakg::rdf

template <>
struct std::hash<pwakg::rdf::Term> {
  std::size_t operator()(const pwakg::rdf::Term& term) const noexcept {
    return pwakg::rdf::hash_value(term);
  }
};

template <>
struct std::hash<pwakg::rdf::Triple> {
  std::size_t operator()(const pwakg::rdf::Triple& t) const noexcept {
    std::size_t h = pwakg::rdf::hash_value(t.subject);
    h = h * 31 + pwakg::rdf::hash_value(t.predicate);
    return h * 31 + pwakg::rdf::hash_value(t.object);
  }
};
