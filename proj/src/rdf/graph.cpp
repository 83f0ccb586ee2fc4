#include "pwakg/rdf/graph.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_set>

#include "pwakg/error.hpp"

namespace pwakg::rdf {

TermId Graph::intern(const Term& term) {
  auto [it, inserted] = term_ids_.try_emplace(term, static_cast<TermId>(terms_.size()));
  if (inserted) terms_.push_back(term);
  return it->second;
}

std::optional<TermId> Graph::find_term(const Term& term) const {
  auto it = term_ids_.find(term);
  if (it == term_ids_.end()) return std::nullopt;
  return it->second;
}

bool Graph::insert(const Triple& triple) {
  if (frozen_) throw std::logic_error("insert into a frozen graph");
  if (triple.subject.is_literal()) {
    throw StructuralError("literal " + triple.subject.to_ntriples() + " in subject position");
  }
  if (!triple.predicate.is_iri()) {
    throw StructuralError("non-IRI " + triple.predicate.to_ntriples() + " in predicate position");
  }
  // Look up first so that a duplicate insert does not intern anything.
  auto s = find_term(triple.subject);
  auto p = find_term(triple.predicate);
  auto o = find_term(triple.object);
  if (s && p && o && present_.contains(TripleIds{*s, *p, *o})) return false;

  TripleIds ids{s ? *s : intern(triple.subject), p ? *p : intern(triple.predicate),
                o ? *o : intern(triple.object)};
  auto index = static_cast<std::uint32_t>(arena_.size());
  arena_.push_back(ids);
  present_.insert(ids);
  by_subject_[ids.subject].push_back(index);
  by_predicate_[ids.predicate].push_back(index);
  by_object_[ids.object].push_back(index);
  return true;
}

bool Graph::contains(const Triple& triple) const {
  auto s = find_term(triple.subject);
  auto p = find_term(triple.predicate);
  auto o = find_term(triple.object);
  return s && p && o && present_.contains(TripleIds{*s, *p, *o});
}

const std::vector<std::uint32_t>* Graph::select_postings(std::optional<TermId> s,
                                                         std::optional<TermId> p,
                                                         std::optional<TermId> o) const {
  const std::vector<std::uint32_t>* best = nullptr;
  auto consider = [&](const Postings& index, std::optional<TermId> id) -> bool {
    if (!id) return true;
    auto it = index.find(*id);
    if (it == index.end()) return false;
    if (best == nullptr || it->second.size() < best->size()) best = &it->second;
    return true;
  };
  if (!consider(by_subject_, s) || !consider(by_predicate_, p) || !consider(by_object_, o)) {
    return nullptr;
  }
  return best;
}

std::size_t Graph::estimate(std::optional<TermId> s, std::optional<TermId> p,
                            std::optional<TermId> o) const {
  if (!s && !p && !o) return arena_.size();
  const auto* postings = select_postings(s, p, o);
  return postings == nullptr ? 0 : postings->size();
}

std::vector<Triple> Graph::match(const std::optional<Term>& subject,
                                 const std::optional<Term>& predicate,
                                 const std::optional<Term>& object) const {
  std::vector<Triple> out;
  std::optional<TermId> s, p, o;
  if (subject && !(s = find_term(*subject))) return out;
  if (predicate && !(p = find_term(*predicate))) return out;
  if (object && !(o = find_term(*object))) return out;
  for_each_match(s, p, o, [&](const TripleIds& t) {
    out.push_back(Triple{terms_[t.subject], terms_[t.predicate], terms_[t.object]});
  });
  return out;
}

Triple Graph::triple(std::size_t index) const {
  const TripleIds& t = arena_.at(index);
  return Triple{terms_[t.subject], terms_[t.predicate], terms_[t.object]};
}

std::vector<Triple> Graph::triples() const {
  std::vector<Triple> out;
  out.reserve(arena_.size());
  for (std::size_t i = 0; i < arena_.size(); ++i) out.push_back(triple(i));
  return out;
}

void Graph::set_prefix(std::string prefix, std::string namespace_iri) {
  if (frozen_) throw std::logic_error("set_prefix on a frozen graph");
  prefixes_[std::move(prefix)] = std::move(namespace_iri);
}

void Graph::set_prefixes(const PrefixMap& prefixes) {
  for (const auto& [prefix, ns] : prefixes) set_prefix(prefix, ns);
}

std::vector<BlankNode> Graph::blank_nodes() const {
  std::vector<BlankNode> out;
  std::unordered_set<TermId> seen;
  for (const auto& t : arena_) {
    for (TermId id : {t.subject, t.object}) {
      if (terms_[id].is_blank() && seen.insert(id).second) out.push_back(terms_[id].as_blank());
    }
  }
  return out;
}

bool Graph::check_indexes() const {
  if (present_.size() != arena_.size()) return false;
  auto check = [&](const Postings& index, TermId TripleIds::*position) {
    std::size_t total = 0;
    for (const auto& [id, postings] : index) {
      total += postings.size();
      for (std::uint32_t i : postings) {
        if (i >= arena_.size() || arena_[i].*position != id) return false;
      }
    }
    return total == arena_.size();
  };
  for (const auto& t : arena_) {
    if (!present_.contains(t)) return false;
  }
  return check(by_subject_, &TripleIds::subject) && check(by_predicate_, &TripleIds::predicate) &&
         check(by_object_, &TripleIds::object);
}

namespace {

Term rename_blank(const Term& term, const std::string& prefix) {
  if (!term.is_blank()) return term;
  return BlankNode{prefix + term.as_blank().label};
}

void merge_into(Graph& out, const Graph& source, std::size_t source_index) {
  const std::string prefix = "b" + std::to_string(source_index) + "_";
  for (const auto& t : source.triple_ids()) {
    out.insert(rename_blank(source.term(t.subject), prefix), source.term(t.predicate),
               rename_blank(source.term(t.object), prefix));
  }
  out.set_prefixes(source.prefixes());
}

}  // namespace

Graph merge(std::span<const Graph> graphs) {
  Graph out;
  for (std::size_t i = 0; i < graphs.size(); ++i) merge_into(out, graphs[i], i);
  return out;
}

Graph merge(std::initializer_list<const Graph*> graphs) {
  Graph out;
  std::size_t i = 0;
  for (const Graph* g : graphs) merge_into(out, *g, i++);
  return out;
}

}  // namespace pwakg::rdf
