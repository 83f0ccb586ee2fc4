#include "text/cursor.hpp"

#include "pwakg/rdf/term.hpp"

namespace pwakg::text {

namespace {

bool is_alpha(char c) { return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z'); }
bool is_digit(char c) { return c >= '0' && c <= '9'; }
bool is_hex(char c) { return is_digit(c) || (c >= 'a' && c <= 'f') || (c >= 'A' && c <= 'F'); }
bool is_high(char c) { return static_cast<unsigned char>(c) >= 0x80; }

char lower(char c) { return (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : c; }

char32_t read_hex(Cursor& cursor, int digits, std::size_t escape_offset) {
  char32_t value = 0;
  for (int i = 0; i < digits; ++i) {
    char c = cursor.peek();
    if (!is_hex(c)) Cursor::fail_at(escape_offset, "malformed unicode escape");
    cursor.get();
    value = value * 16 + static_cast<char32_t>(is_digit(c) ? c - '0' : lower(c) - 'a' + 10);
  }
  if (value > 0x10FFFF || (value >= 0xD800 && value <= 0xDFFF)) {
    Cursor::fail_at(escape_offset, "unicode escape out of range");
  }
  return value;
}

constexpr std::string_view kLocalEscapes = "_~.-!$&'()*+,;=/?#@%";

}  // namespace

bool Cursor::consume(char c) {
  if (peek() != c || at_end()) return false;
  ++pos_;
  return true;
}

bool Cursor::consume(std::string_view s) {
  if (!starts_with(s)) return false;
  pos_ += s.size();
  return true;
}

bool Cursor::consume_keyword(std::string_view keyword) {
  if (pos_ + keyword.size() > text_.size()) return false;
  for (std::size_t i = 0; i < keyword.size(); ++i) {
    if (lower(text_[pos_ + i]) != lower(keyword[i])) return false;
  }
  char next = pos_ + keyword.size() < text_.size() ? text_[pos_ + keyword.size()] : '\0';
  if (is_name_char(next) || next == ':') return false;
  pos_ += keyword.size();
  return true;
}

void Cursor::skip_space() {
  while (!at_end()) {
    char c = peek();
    if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
      ++pos_;
    } else if (c == '#') {
      while (!at_end() && peek() != '\n') ++pos_;
    } else {
      break;
    }
  }
}

void Cursor::skip_blanks() {
  while (peek() == ' ' || peek() == '\t') ++pos_;
}

void Cursor::expect(char c, std::string_view what) {
  if (!consume(c)) {
    if (at_end()) fail("unexpected end of input, expected " + std::string(what));
    fail("expected " + std::string(what));
  }
}

std::pair<std::size_t, std::size_t> line_column(std::string_view text, std::size_t offset) {
  if (text.empty()) return {1, 1};
  if (offset >= text.size()) offset = text.size() - 1;
  std::size_t line = 1;
  std::size_t column = 1;
  for (std::size_t i = 0; i < offset; ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return {line, column};
}

bool is_name_start(char c) { return is_alpha(c) || c == '_' || is_high(c); }
bool is_name_char(char c) { return is_name_start(c) || is_digit(c) || c == '-'; }

void append_utf8(std::string& out, char32_t cp) {
  if (cp < 0x80) {
    out += static_cast<char>(cp);
  } else if (cp < 0x800) {
    out += static_cast<char>(0xC0 | (cp >> 6));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  } else if (cp < 0x10000) {
    out += static_cast<char>(0xE0 | (cp >> 12));
    out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  } else {
    out += static_cast<char>(0xF0 | (cp >> 18));
    out += static_cast<char>(0x80 | ((cp >> 12) & 0x3F));
    out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  }
}

std::string read_iriref(Cursor& cursor) {
  std::size_t start = cursor.offset();
  cursor.expect('<', "'<'");
  std::string out;
  while (true) {
    if (cursor.at_end()) Cursor::fail_at(start, "unterminated IRI");
    char c = cursor.peek();
    if (c == '>') {
      cursor.get();
      return out;
    }
    if (c == '\\') {
      std::size_t escape = cursor.offset();
      cursor.get();
      char kind = cursor.get();
      if (kind == 'u') {
        append_utf8(out, read_hex(cursor, 4, escape));
      } else if (kind == 'U') {
        append_utf8(out, read_hex(cursor, 8, escape));
      } else {
        Cursor::fail_at(escape, "malformed IRI: invalid escape");
      }
      continue;
    }
    if (c == '\n' || c == '\r') Cursor::fail_at(start, "unterminated IRI");
    if (c == ' ' || c == '\t' || c == '<' || c == '"' || c == '{' || c == '}' || c == '|' ||
        c == '^' || c == '`') {
      cursor.fail(std::string("malformed IRI: character '") + c + "' not allowed");
    }
    out += cursor.get();
  }
}

std::string read_quoted(Cursor& cursor) {
  std::size_t start = cursor.offset();
  char quote = cursor.peek();
  if (quote != '"' && quote != '\'') cursor.fail("expected a quoted string");
  if (cursor.starts_with(std::string(3, quote))) {
    cursor.fail("triple-quoted literals are not supported");
  }
  cursor.get();
  std::string out;
  while (true) {
    if (cursor.at_end()) Cursor::fail_at(start, "unterminated literal");
    char c = cursor.peek();
    if (c == quote) {
      cursor.get();
      return out;
    }
    if (c == '\n' || c == '\r') Cursor::fail_at(start, "unterminated literal");
    if (c == '\\') {
      std::size_t escape = cursor.offset();
      cursor.get();
      char e = cursor.get();
      switch (e) {
        case 't': out += '\t'; break;
        case 'b': out += '\b'; break;
        case 'n': out += '\n'; break;
        case 'r': out += '\r'; break;
        case 'f': out += '\f'; break;
        case '"': out += '"'; break;
        case '\'': out += '\''; break;
        case '\\': out += '\\'; break;
        case 'u': append_utf8(out, read_hex(cursor, 4, escape)); break;
        case 'U': append_utf8(out, read_hex(cursor, 8, escape)); break;
        default: Cursor::fail_at(escape, "invalid escape sequence in literal");
      }
      continue;
    }
    out += cursor.get();
  }
}

std::string read_language(Cursor& cursor) {
  std::size_t start = cursor.offset();
  cursor.expect('@', "'@'");
  std::string tag;
  while (is_alpha(cursor.peek())) tag += cursor.get();
  if (tag.empty()) Cursor::fail_at(start, "malformed language tag");
  while (cursor.peek() == '-' && (is_alpha(cursor.peek(1)) || is_digit(cursor.peek(1)))) {
    tag += cursor.get();
    while (is_alpha(cursor.peek()) || is_digit(cursor.peek())) tag += cursor.get();
  }
  return tag;
}

std::string read_prefix_label(Cursor& cursor) {
  std::size_t start = cursor.offset();
  std::string prefix;
  if (is_alpha(cursor.peek()) || is_high(cursor.peek())) {
    while (is_name_char(cursor.peek()) || cursor.peek() == '.' || is_digit(cursor.peek())) {
      prefix += cursor.get();
    }
  }
  if (!prefix.empty() && prefix.back() == '.') Cursor::fail_at(start, "malformed prefix name");
  if (!cursor.consume(':')) Cursor::fail_at(start, "expected a prefix name ending in ':'");
  return prefix;
}

std::optional<PrefixedName> read_prefixed_name(Cursor& cursor) {
  std::size_t start = cursor.offset();
  std::string prefix;
  if (is_alpha(cursor.peek()) || is_high(cursor.peek())) {
    while (is_name_char(cursor.peek()) || cursor.peek() == '.' || is_digit(cursor.peek())) {
      prefix += cursor.get();
    }
    // A '.' ending the prefix is the statement terminator, not a name char.
    while (!prefix.empty() && prefix.back() == '.') {
      prefix.pop_back();
      cursor.seek(cursor.offset() - 1);
    }
  }
  if (cursor.peek() != ':') {
    cursor.seek(start);
    return std::nullopt;
  }
  cursor.get();

  std::string local;
  std::size_t trailing_dots = 0;
  while (!cursor.at_end()) {
    char c = cursor.peek();
    if (c == '\\') {
      char escaped = cursor.peek(1);
      if (kLocalEscapes.find(escaped) == std::string_view::npos || escaped == '\0') {
        cursor.fail("invalid escape in local name");
      }
      cursor.get();
      local += cursor.get();
      trailing_dots = 0;
      continue;
    }
    if (c == '%') {
      if (!is_hex(cursor.peek(1)) || !is_hex(cursor.peek(2))) {
        cursor.fail("invalid percent escape in local name");
      }
      local += cursor.get();
      local += cursor.get();
      local += cursor.get();
      trailing_dots = 0;
      continue;
    }
    if (is_name_char(c) || is_digit(c) || c == ':' || c == '.') {
      if (local.empty() && c == '.') break;
      local += cursor.get();
      trailing_dots = c == '.' ? trailing_dots + 1 : 0;
      continue;
    }
    break;
  }
  // PN_LOCAL cannot end with '.'; give those back to the statement.
  local.resize(local.size() - trailing_dots);
  cursor.seek(cursor.offset() - trailing_dots);
  return PrefixedName{std::move(prefix), std::move(local), start};
}

std::optional<NumberToken> read_number(Cursor& cursor) {
  std::size_t start = cursor.offset();
  std::string lexical;
  if (cursor.peek() == '+' || cursor.peek() == '-') lexical += cursor.get();
  std::size_t int_digits = 0;
  while (is_digit(cursor.peek())) lexical += cursor.get(), ++int_digits;
  std::size_t frac_digits = 0;
  bool point = false;
  if (cursor.peek() == '.' && is_digit(cursor.peek(1))) {
    point = true;
    lexical += cursor.get();
    while (is_digit(cursor.peek())) lexical += cursor.get(), ++frac_digits;
  }
  if (int_digits + frac_digits == 0) {
    cursor.seek(start);
    return std::nullopt;
  }
  bool exponent = false;
  if (cursor.peek() == 'e' || cursor.peek() == 'E') {
    std::size_t mark = cursor.offset();
    std::string exp(1, cursor.get());
    if (cursor.peek() == '+' || cursor.peek() == '-') exp += cursor.get();
    std::size_t exp_digits = 0;
    while (is_digit(cursor.peek())) exp += cursor.get(), ++exp_digits;
    if (exp_digits == 0) {
      cursor.seek(mark);
    } else {
      exponent = true;
      lexical += exp;
    }
  }
  if (is_name_start(cursor.peek()) || cursor.peek() == ':') {
    cursor.seek(start);
    return std::nullopt;
  }
  std::string_view datatype = exponent ? rdf::vocab::kXsdDouble
                              : point  ? rdf::vocab::kXsdDecimal
                                       : rdf::vocab::kXsdInteger;
  return NumberToken{std::move(lexical), datatype};
}

std::string read_blank_label(Cursor& cursor) {
  std::size_t start = cursor.offset();
  if (!cursor.consume("_:")) cursor.fail("expected a blank node label");
  std::string label;
  while (is_alpha(cursor.peek()) || is_digit(cursor.peek()) || cursor.peek() == '_') {
    label += cursor.get();
  }
  if (label.empty()) Cursor::fail_at(start, "empty blank node label");
  char next = cursor.peek();
  if (next == '-' || is_high(next) || (next == '.' && is_name_char(cursor.peek(1)))) {
    Cursor::fail_at(start, "blank node labels are limited to [A-Za-z0-9_]");
  }
  return label;
}

std::string resolve_iri(std::string_view reference, const std::optional<std::string>& base,
                        std::size_t offset) {
  if (rdf::Iri::is_valid(reference)) return std::string(reference);
  if (base) {
    std::string joined = *base + std::string(reference);
    if (rdf::Iri::is_valid(joined)) return joined;
  }
  if (reference.empty() && base) return *base;
  Cursor::fail_at(offset, "malformed IRI <" + std::string(reference) + ">: not absolute");
}

}  // namespace pwakg::text
