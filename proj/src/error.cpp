#include "pwakg/error.hpp"

namespace pwakg {

std::string to_string(const ParseDiagnostic& diagnostic) {
  std::string out = std::to_string(diagnostic.line) + ":" + std::to_string(diagnostic.column) +
                    ": " + (diagnostic.severity == Severity::kError ? "error" : "warning") +
                    ": " + diagnostic.message;
  return out;
}

namespace {
std::string summarize(const std::vector<ParseDiagnostic>& diagnostics) {
  for (const auto& d : diagnostics) {
    if (d.severity == Severity::kError) {
      std::string message = to_string(d);
      std::size_t errors = 0;
      for (const auto& other : diagnostics) errors += other.severity == Severity::kError;
      if (errors > 1) message += " (+" + std::to_string(errors - 1) + " more)";
      return message;
    }
  }
  return "parse failed";
}
}  // namespace

ParseError::ParseError(std::vector<ParseDiagnostic> diagnostics)
    : Error(summarize(diagnostics)), diagnostics_(std::move(diagnostics)) {}

}  // namespace pwakg
