#include <algorithm>
#include <map>
#include <vector>

#include "pwakg/turtle/turtle.hpp"

namespace pwakg::turtle {

namespace {

using rdf::Term;

bool is_alnum(char c) {
  return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9');
}

// Conservative PN_LOCAL check: only forms the parser reads back unchanged.
bool is_safe_local(std::string_view local) {
  if (local.empty()) return true;
  if (!(is_alnum(local.front()) || local.front() == '_' || local.front() == ':')) return false;
  if (local.back() == '.') return false;
  return std::all_of(local.begin(), local.end(), [](char c) {
    return is_alnum(c) || c == '_' || c == '-' || c == ':' || c == '.';
  });
}

bool is_safe_prefix(std::string_view prefix) {
  if (prefix.empty()) return true;
  if (!((prefix[0] >= 'A' && prefix[0] <= 'Z') || (prefix[0] >= 'a' && prefix[0] <= 'z'))) {
    return false;
  }
  if (prefix.back() == '.') return false;
  return std::all_of(prefix.begin(), prefix.end(),
                     [](char c) { return is_alnum(c) || c == '_' || c == '-' || c == '.'; });
}

class Writer {
 public:
  explicit Writer(const rdf::PrefixMap& prefixes) {
    for (const auto& [prefix, ns] : prefixes) {
      if (is_safe_prefix(prefix) && !ns.empty()) prefixes_.emplace_back(prefix, ns);
    }
    // Longest namespace first so the most specific prefix wins.
    std::stable_sort(prefixes_.begin(), prefixes_.end(),
                     [](const auto& a, const auto& b) { return a.second.size() > b.second.size(); });
  }

  std::string iri(const std::string& value) const {
    for (const auto& [prefix, ns] : prefixes_) {
      if (value.size() >= ns.size() && value.compare(0, ns.size(), ns) == 0) {
        std::string_view local = std::string_view(value).substr(ns.size());
        if (is_safe_local(local)) return prefix + ":" + std::string(local);
      }
    }
    return "<" + value + ">";
  }

  std::string term(const Term& t) const {
    switch (t.kind()) {
      case rdf::TermKind::kIri:
        return iri(t.as_iri().value);
      case rdf::TermKind::kBlank:
        return "_:" + t.as_blank().label;
      case rdf::TermKind::kLiteral:
        break;
    }
    const rdf::Literal& lit = t.as_literal();
    std::string out = "\"" + rdf::escape_string(lit.lexical) + "\"";
    if (!lit.language.empty()) return out + "@" + lit.language;
    return out + "^^" + iri(lit.datatype);
  }

 private:
  std::vector<std::pair<std::string, std::string>> prefixes_;
};

}  // namespace

std::string serialize_turtle(const rdf::Graph& graph) {
  std::string out;
  for (const auto& [prefix, ns] : graph.prefixes()) {
    if (is_safe_prefix(prefix)) out += "@prefix " + prefix + ": <" + ns + "> .\n";
  }
  if (graph.empty()) return out;

  const Term type{rdf::Iri{std::string(rdf::vocab::kRdfType)}};
  auto predicate_less = [&](const Term& a, const Term& b) {
    bool a_type = a == type;
    bool b_type = b == type;
    if (a_type != b_type) return a_type;
    return a < b;
  };
  using Objects = std::vector<Term>;
  using Predicates = std::map<Term, Objects, decltype(predicate_less)>;
  std::map<Term, Predicates> subjects;
  for (const auto& t : graph.triple_ids()) {
    auto [it, inserted] =
        subjects.try_emplace(graph.term(t.subject), Predicates(predicate_less));
    it->second[graph.term(t.predicate)].push_back(graph.term(t.object));
  }

  Writer writer(graph.prefixes());
  if (!out.empty()) out += "\n";
  bool first_subject = true;
  for (auto& [subject, predicates] : subjects) {
    if (!first_subject) out += "\n";
    first_subject = false;
    out += writer.term(subject);
    bool first_predicate = true;
    for (auto& [predicate, objects] : predicates) {
      std::sort(objects.begin(), objects.end());
      out += first_predicate ? " " : " ;\n    ";
      first_predicate = false;
      out += predicate == type ? std::string("a") : writer.term(predicate);
      for (std::size_t i = 0; i < objects.size(); ++i) {
        out += i == 0 ? " " : ", ";
        out += writer.term(objects[i]);
      }
    }
    out += " .\n";
  }
  return out;
}

}  // namespace pwakg::turtle
