#include "pwakg/rdf/isomorphism.hpp"

#include <algorithm>
#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "pwakg/error.hpp"

namespace pwakg::rdf {

namespace {

constexpr std::uint64_t kBlankMarker = 0x51ed270b27dd9a3fULL;
constexpr std::uint64_t kSelfMarker = 0x2545f4914f6cdd1dULL;

std::uint64_t mix(std::uint64_t h, std::uint64_t v) {
  h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  return h * 0xff51afd7ed558ccdULL;
}

// Blank-node view of one graph: dense blank indices, incident triples, and a
// colour per blank node.
struct BlankStructure {
  const Graph* graph = nullptr;
  std::vector<TermId> blanks;                      // blank index -> term id
  std::unordered_map<TermId, std::size_t> index;   // term id -> blank index
  std::vector<std::vector<std::size_t>> incident;  // blank index -> arena positions
  std::vector<std::uint64_t> colour;

  explicit BlankStructure(const Graph& g) : graph(&g) {
    auto triples = g.triple_ids();
    for (std::size_t i = 0; i < triples.size(); ++i) {
      for (TermId id : {triples[i].subject, triples[i].object}) {
        if (!g.term(id).is_blank()) continue;
        auto [it, inserted] = index.try_emplace(id, blanks.size());
        if (inserted) {
          blanks.push_back(id);
          incident.emplace_back();
        }
        auto& list = incident[it->second];
        if (list.empty() || list.back() != i) list.push_back(i);
      }
    }
    colour.assign(blanks.size(), 0);
  }

  bool is_blank(TermId id) const { return index.contains(id); }

  std::uint64_t ground_hash(TermId id) const { return hash_value(graph->term(id)); }

  // One refinement round. With `initial`, neighbouring blank nodes contribute
  // a fixed marker instead of their colour.
  std::vector<std::uint64_t> refine(bool initial) const {
    std::vector<std::uint64_t> next(blanks.size());
    auto triples = graph->triple_ids();
    for (std::size_t b = 0; b < blanks.size(); ++b) {
      std::vector<std::uint64_t> signature;
      TermId self = blanks[b];
      for (std::size_t pos : incident[b]) {
        const TripleIds& t = triples[pos];
        auto neighbour = [&](TermId other) -> std::uint64_t {
          if (other == self) return kSelfMarker;
          auto it = index.find(other);
          if (it == index.end()) return ground_hash(other);
          return initial ? kBlankMarker : mix(kBlankMarker, colour[it->second]);
        };
        std::uint64_t pred = ground_hash(t.predicate);
        if (t.subject == self) signature.push_back(mix(mix(1, pred), neighbour(t.object)));
        if (t.object == self) signature.push_back(mix(mix(2, pred), neighbour(t.subject)));
      }
      std::sort(signature.begin(), signature.end());
      std::uint64_t h = initial ? 0 : colour[b];
      for (std::uint64_t s : signature) h = mix(h, s);
      next[b] = h;
    }
    return next;
  }

  std::size_t class_count() const {
    std::vector<std::uint64_t> sorted = colour;
    std::sort(sorted.begin(), sorted.end());
    return static_cast<std::size_t>(std::unique(sorted.begin(), sorted.end()) - sorted.begin());
  }
};

class Matcher {
 public:
  Matcher(const BlankStructure& a, const BlankStructure& b) : a_(a), b_(b) {
    mapping_.assign(a.blanks.size(), kUnassigned);
    used_.assign(b.blanks.size(), false);

    // Assign blanks in rarest-colour-first order.
    std::unordered_map<std::uint64_t, std::size_t> class_size;
    for (std::uint64_t c : a.colour) ++class_size[c];
    order_.resize(a.blanks.size());
    for (std::size_t i = 0; i < order_.size(); ++i) order_[i] = i;
    std::stable_sort(order_.begin(), order_.end(), [&](std::size_t x, std::size_t y) {
      return class_size[a.colour[x]] < class_size[a.colour[y]];
    });
  }

  bool run() { return assign(0); }

 private:
  static constexpr std::size_t kUnassigned = static_cast<std::size_t>(-1);

  // Term of `a` translated into `b`'s id space, if representable.
  std::optional<TermId> translate(TermId id) const {
    auto it = a_.index.find(id);
    if (it != a_.index.end()) {
      std::size_t target = mapping_[it->second];
      if (target == kUnassigned) return std::nullopt;
      return b_.blanks[target];
    }
    return b_.graph->find_term(a_.graph->term(id));
  }

  bool assigned(TermId id) const {
    auto it = a_.index.find(id);
    return it == a_.index.end() || mapping_[it->second] != kUnassigned;
  }

  bool consistent(std::size_t blank) const {
    auto triples = a_.graph->triple_ids();
    for (std::size_t pos : a_.incident[blank]) {
      const TripleIds& t = triples[pos];
      if (!assigned(t.subject) || !assigned(t.object)) continue;
      auto s = translate(t.subject);
      auto p = translate(t.predicate);
      auto o = translate(t.object);
      if (!s || !p || !o || !b_.graph->contains(TripleIds{*s, *p, *o})) return false;
    }
    return true;
  }

  bool assign(std::size_t depth) {
    if (depth == order_.size()) return true;
    std::size_t blank = order_[depth];
    for (std::size_t candidate = 0; candidate < b_.blanks.size(); ++candidate) {
      if (used_[candidate] || b_.colour[candidate] != a_.colour[blank]) continue;
      mapping_[blank] = candidate;
      used_[candidate] = true;
      if (consistent(blank) && assign(depth + 1)) return true;
      used_[candidate] = false;
      mapping_[blank] = kUnassigned;
    }
    return false;
  }

  const BlankStructure& a_;
  const BlankStructure& b_;
  std::vector<std::size_t> order_;
  std::vector<std::size_t> mapping_;
  std::vector<bool> used_;
};

}  // namespace

bool isomorphic(const Graph& a, const Graph& b) {
  BlankStructure sa(a);
  BlankStructure sb(b);
  if (sa.blanks.size() > kMaxIsomorphismBlankNodes || sb.blanks.size() > kMaxIsomorphismBlankNodes) {
    throw CapacityError("graph isomorphism supports at most " +
                        std::to_string(kMaxIsomorphismBlankNodes) + " blank nodes (got " +
                        std::to_string(std::max(sa.blanks.size(), sb.blanks.size())) + ")");
  }
  if (a.size() != b.size() || sa.blanks.size() != sb.blanks.size()) return false;

  // Ground triples must match verbatim; equal totals plus a ⊆ b on ground
  // triples gives equality once the blank triples are matched.
  std::size_t ground_a = 0;
  for (const Triple& t : a.triples()) {
    if (t.has_blank()) continue;
    ++ground_a;
    if (!b.contains(t)) return false;
  }
  std::size_t ground_b = 0;
  for (const auto& t : b.triple_ids()) {
    ground_b += !(sb.is_blank(t.subject) || sb.is_blank(t.object));
  }
  if (ground_a != ground_b) return false;
  if (sa.blanks.empty()) return true;

  sa.colour = sa.refine(true);
  sb.colour = sb.refine(true);
  for (std::size_t round = 0; round < sa.blanks.size(); ++round) {
    std::size_t before = sa.class_count();
    auto next_a = sa.refine(false);
    auto next_b = sb.refine(false);
    sa.colour = std::move(next_a);
    sb.colour = std::move(next_b);
    if (sa.class_count() == before) break;
  }

  std::vector<std::uint64_t> ca = sa.colour;
  std::vector<std::uint64_t> cb = sb.colour;
  std::sort(ca.begin(), ca.end());
  std::sort(cb.begin(), cb.end());
  if (ca != cb) return false;

  return Matcher(sa, sb).run();
}

}  // namespace pwakg::rdf
