#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "pwakg/rdf/term.hpp"

namespace pwakg::rdf {

using TermId = std::uint32_t;

struct TripleIds {
  TermId subject;
  TermId predicate;
  TermId object;

  friend bool operator==(const TripleIds&, const TripleIds&) = default;
};

struct TripleIdsHash {
  std::size_t operator()(const TripleIds& t) const noexcept {
    std::uint64_t h = t.subject;
    h = h * 0x9e3779b97f4a7c15ULL + t.predicate;
    h = h * 0x9e3779b97f4a7c15ULL + t.object;
    return static_cast<std::size_t>(h ^ (h >> 29));
  }
};

// Namespace prefixes, ordered by prefix name.
using PrefixMap = std::map<std::string, std::string>;

// In-memory triple store. Terms are interned; triples live in an
// append-ordered arena with one hash index per position (S, P, O), each
// mapping a term to the arena positions of the triples that use it there.
//
// Single writer while building. After `freeze()` the graph rejects inserts
// and every const member is safe to call from many threads.
class Graph {
 public:
  // Returns true iff the triple was not present. Throws StructuralError for
  // literal subjects or non-IRI predicates, std::logic_error when frozen.
  bool insert(const Triple& triple);
  bool insert(Term subject, Term predicate, Term object) {
    return insert(Triple{std::move(subject), std::move(predicate), std::move(object)});
  }

  bool contains(const Triple& triple) const;
  bool contains(const TripleIds& ids) const { return present_.contains(ids); }

  // Triples agreeing with every bound position, in arena order. Uses the
  // index of the most selective bound position.
  std::vector<Triple> match(const std::optional<Term>& subject, const std::optional<Term>& predicate,
                            const std::optional<Term>& object) const;

  std::size_t size() const { return arena_.size(); }
  bool empty() const { return arena_.empty(); }

  std::vector<Triple> triples() const;
  Triple triple(std::size_t index) const;
  std::span<const TripleIds> triple_ids() const { return arena_; }

  // Interned term access.
  std::optional<TermId> find_term(const Term& term) const;
  const Term& term(TermId id) const { return terms_[id]; }
  std::size_t term_count() const { return terms_.size(); }

  // Calls `fn(const TripleIds&)` for each triple matching the bound ids.
  template <typename Fn>
  void for_each_match(std::optional<TermId> s, std::optional<TermId> p, std::optional<TermId> o,
                      Fn&& fn) const {
    const std::vector<std::uint32_t>* postings = select_postings(s, p, o);
    auto accept = [&](const TripleIds& t) {
      return (!s || t.subject == *s) && (!p || t.predicate == *p) && (!o || t.object == *o);
    };
    if (postings == nullptr) {
      if (s || p || o) return;  // a bound term with no postings
      for (const auto& t : arena_) fn(t);
      return;
    }
    for (std::uint32_t index : *postings) {
      const TripleIds& t = arena_[index];
      if (accept(t)) fn(t);
    }
  }

  // Upper bound on the number of matches: the size of the smallest posting
  // list among bound positions (whole graph size when nothing is bound).
  std::size_t estimate(std::optional<TermId> s, std::optional<TermId> p,
                       std::optional<TermId> o) const;

  const PrefixMap& prefixes() const { return prefixes_; }
  void set_prefix(std::string prefix, std::string namespace_iri);
  void set_prefixes(const PrefixMap& prefixes);

  void freeze() { frozen_ = true; }
  bool frozen() const { return frozen_; }

  // Blank nodes in order of first appearance.
  std::vector<BlankNode> blank_nodes() const;

  // Every index agrees with the arena. Used by tests.
  bool check_indexes() const;

 private:
  using Postings = std::unordered_map<TermId, std::vector<std::uint32_t>>;

  TermId intern(const Term& term);
  const std::vector<std::uint32_t>* select_postings(std::optional<TermId> s,
                                                    std::optional<TermId> p,
                                                    std::optional<TermId> o) const;

  std::vector<Term> terms_;
  std::unordered_map<Term, TermId> term_ids_;
  std::vector<TripleIds> arena_;
  std::unordered_set<TripleIds, TripleIdsHash> present_;
  Postings by_subject_;
  Postings by_predicate_;
  Postings by_object_;
  PrefixMap prefixes_;
  bool frozen_ = false;
};

// Union of the inputs. Blank nodes of input i are relabeled `b{i}_{label}`,
// so equal labels from different inputs stay distinct nodes. Prefix maps are
// merged with later inputs winning conflicts.
Graph merge(std::span<const Graph> graphs);
Graph merge(std::initializer_list<const Graph*> graphs);

}  // namespace pwakg::rdf
