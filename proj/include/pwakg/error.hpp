#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace pwakg {

// Base class of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A triple or term that violates an RDF structural rule (literal subject,
// relative IRI, malformed blank node label, ...).
class StructuralError : public Error {
 public:
  using Error::Error;
};

class NotFoundError : public Error {
 public:
  using Error::Error;
};

// Raised by algorithms with a documented size limit.
class CapacityError : public Error {
 public:
  using Error::Error;
};

class MappingError : public Error {
 public:
  using Error::Error;
};

enum class Severity { kError, kWarning };

struct ParseDiagnostic {
  std::size_t line = 1;    // 1-based
  std::size_t column = 1;  // 1-based, in bytes
  std::string message;
  Severity severity = Severity::kError;

  friend bool operator==(const ParseDiagnostic&, const ParseDiagnostic&) = default;
};

std::string to_string(const ParseDiagnostic& diagnostic);

// Thrown when a document has at least one error-severity diagnostic. All
// diagnostics collected before failing are kept.
class ParseError : public Error {
 public:
  explicit ParseError(std::vector<ParseDiagnostic> diagnostics);

  const std::vector<ParseDiagnostic>& diagnostics() const { return diagnostics_; }

 private:
  std::vector<ParseDiagnostic> diagnostics_;
};

}  // namespace pwakg
