#pragma once

// Lexical helpers shared by the Turtle, N-Triples and SPARQL parsers.

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <utility>

namespace pwakg::text {

// Thrown by the helpers below; parsers turn it into a ParseDiagnostic.
struct SyntaxError {
  std::size_t offset;
  std::string message;
};

class Cursor {
 public:
  explicit Cursor(std::string_view text) : text_(text) {}

  bool at_end() const { return pos_ >= text_.size(); }
  char peek(std::size_t ahead = 0) const {
    return pos_ + ahead < text_.size() ? text_[pos_ + ahead] : '\0';
  }
  char get() { return at_end() ? '\0' : text_[pos_++]; }
  std::size_t offset() const { return pos_; }
  void seek(std::size_t offset) { pos_ = offset; }
  std::string_view text() const { return text_; }
  std::string_view rest() const { return text_.substr(pos_); }

  bool starts_with(std::string_view s) const { return rest().substr(0, s.size()) == s; }
  bool consume(char c);
  bool consume(std::string_view s);
  // ASCII case-insensitive keyword followed by a non-name character.
  bool consume_keyword(std::string_view keyword);

  // Skips whitespace and `#` comments.
  void skip_space();
  // Skips spaces and tabs only.
  void skip_blanks();

  [[noreturn]] void fail(std::string message) const { throw SyntaxError{pos_, std::move(message)}; }
  [[noreturn]] static void fail_at(std::size_t offset, std::string message) {
    throw SyntaxError{offset, std::move(message)};
  }

  void expect(char c, std::string_view what);

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
};

// 1-based line and column of `offset`, clamped to the last character of the
// text (so errors at end-of-input point at a real character).
std::pair<std::size_t, std::size_t> line_column(std::string_view text, std::size_t offset);

bool is_name_start(char c);
bool is_name_char(char c);

// `<...>` with `\u`/`\U` escapes; returns the unescaped content.
std::string read_iriref(Cursor& cursor);

// A single- or double-quoted short string with ECHAR/UCHAR escapes.
// Triple-quoted strings are rejected.
std::string read_quoted(Cursor& cursor);

// `[A-Za-z]+(-[A-Za-z0-9]+)*` after '@'.
std::string read_language(Cursor& cursor);

struct PrefixedName {
  std::string prefix;
  std::string local;
  std::size_t offset;
};

// PN_PREFIX? ':' PN_LOCAL. Leaves the cursor untouched and returns nullopt
// when the input does not start with a prefixed name.
std::optional<PrefixedName> read_prefixed_name(Cursor& cursor);

// `prefix:` in a prefix directive.
std::string read_prefix_label(Cursor& cursor);

struct NumberToken {
  std::string lexical;
  std::string_view datatype;
};

// Turtle/SPARQL INTEGER, DECIMAL or DOUBLE; nullopt (cursor untouched) if
// the input does not start with a number.
std::optional<NumberToken> read_number(Cursor& cursor);

// `[A-Za-z0-9_]+` after `_:`; leaves a trailing '.' alone.
std::string read_blank_label(Cursor& cursor);

// `base` + `reference` when `reference` is relative; throws SyntaxError at
// `offset` when it is relative and there is no base.
std::string resolve_iri(std::string_view reference, const std::optional<std::string>& base,
                        std::size_t offset);

void append_utf8(std::string& out, char32_t code_point);

}  // namespace pwakg::text
