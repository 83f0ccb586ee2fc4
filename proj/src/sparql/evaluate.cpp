#include "pwakg/sparql/evaluate.hpp"

#include <algorithm>
#include <limits>

namespace pwakg::sparql {

namespace {

using rdf::Term;
using rdf::TermId;

constexpr std::size_t kUnset = std::numeric_limits<std::size_t>::max();

// Pattern position compiled against one graph: a variable slot or a term id.
struct Position {
  std::size_t slot = kUnset;  // variable slot, or kUnset for a constant
  TermId id = 0;
};

struct CompiledPattern {
  Position s, p, o;
};

struct Operand {
  std::size_t slot = kUnset;
  Term constant;
};

struct CompiledFilter {
  CompareOp op;
  Operand lhs, rhs;
  std::vector<std::size_t> slots;  // variable slots referenced
};

int category(const Term& t, bool numeric) {
  switch (t.kind()) {
    case rdf::TermKind::kBlank: return 0;
    case rdf::TermKind::kIri: return 1;
    case rdf::TermKind::kLiteral: break;
  }
  return numeric && t.as_literal().is_numeric() ? 2 : 3;
}

class Evaluator {
 public:
  Evaluator(const Query& query, const rdf::Graph& graph, EvaluationStats& stats)
      : query_(query), graph_(graph), stats_(stats) {}

  std::vector<Solution> run() {
    if (!compile()) return {};
    bindings_.assign(slot_names_.size(), std::nullopt);
    used_.assign(patterns_.size(), false);
    filter_depth_.assign(filters_.size(), kUnset);
    search(0);

    stats_.solutions_before_limit = rows_.size();
    std::vector<std::size_t> order(rows_.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    if (!query_.order_by.empty()) {
      std::vector<std::pair<std::size_t, bool>> keys;
      for (const auto& key : query_.order_by) {
        keys.emplace_back(slot_of(key.variable.name), key.direction == SortDirection::kDescending);
      }
      std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        for (auto [slot, descending] : keys) {
          const auto& x = rows_[a][slot];
          const auto& y = rows_[b][slot];
          if (!x || !y) {
            if (x.has_value() != y.has_value()) return descending ? x.has_value() : !x.has_value();
            continue;
          }
          auto c = compare_terms(graph_.term(*x), graph_.term(*y), true);
          if (c == 0) continue;
          return descending ? c > 0 : c < 0;
        }
        return false;
      });
    }
    std::size_t count = order.size();
    if (query_.limit) count = std::min(count, *query_.limit);

    std::vector<Solution> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
      const auto& row = rows_[order[i]];
      Solution solution;
      for (const auto& v : query_.projection) {
        std::size_t slot = slot_of(v.name);
        if (slot != kUnset && row[slot]) solution.bindings.emplace(v.name, graph_.term(*row[slot]));
      }
      out.push_back(std::move(solution));
    }
    return out;
  }

 private:
  std::size_t slot_of(const std::string& name) const {
    for (std::size_t i = 0; i < slot_names_.size(); ++i) {
      if (slot_names_[i] == name) return i;
    }
    return kUnset;
  }

  std::size_t intern_slot(const std::string& name) {
    std::size_t slot = slot_of(name);
    if (slot != kUnset) return slot;
    slot_names_.push_back(name);
    return slot_names_.size() - 1;
  }

  // False when some constant of the pattern is absent from the graph, in
  // which case there are no solutions.
  bool compile() {
    auto position = [&](const PatternTerm& t, Position& out) {
      if (const Variable* v = as_variable(t)) {
        out.slot = intern_slot(v->name);
        return true;
      }
      auto id = graph_.find_term(std::get<Term>(t));
      if (!id) return false;
      out.id = *id;
      return true;
    };
    bool satisfiable = true;
    for (const auto& pattern : query_.bgp) {
      CompiledPattern c;
      satisfiable &= position(pattern.subject, c.s);
      satisfiable &= position(pattern.predicate, c.p);
      satisfiable &= position(pattern.object, c.o);
      patterns_.push_back(c);
    }
    for (const auto& filter : query_.filters) {
      CompiledFilter c{filter.op, {}, {}, {}};
      auto operand = [&](const PatternTerm& t, Operand& out) {
        if (const Variable* v = as_variable(t)) {
          out.slot = intern_slot(v->name);
          c.slots.push_back(out.slot);
        } else {
          out.constant = std::get<Term>(t);
        }
      };
      operand(filter.lhs, c.lhs);
      operand(filter.rhs, c.rhs);
      filters_.push_back(std::move(c));
    }
    for (const auto& v : query_.projection) intern_slot(v.name);
    return satisfiable;
  }

  std::optional<TermId> value(const Position& pos) const {
    if (pos.slot == kUnset) return pos.id;
    return bindings_[pos.slot];
  }

  const Term* operand_term(const Operand& operand) const {
    if (operand.slot == kUnset) return &operand.constant;
    const auto& bound = bindings_[operand.slot];
    return bound ? &graph_.term(*bound) : nullptr;
  }

  // Error-as-failure: type errors and unbound operands make the filter false.
  bool holds(const CompiledFilter& filter) {
    const Term* a = operand_term(filter.lhs);
    const Term* b = operand_term(filter.rhs);
    if (a == nullptr || b == nullptr) {
      ++stats_.filter_errors;
      return false;
    }
    std::optional<double> x, y;
    if (a->is_literal() && b->is_literal()) {
      x = rdf::numeric_value(a->as_literal());
      y = rdf::numeric_value(b->as_literal());
    }
    bool numeric = x && y;
    switch (filter.op) {
      case CompareOp::kEqual:
        return numeric ? *x == *y : *a == *b;
      case CompareOp::kNotEqual:
        return numeric ? *x != *y : *a != *b;
      default:
        break;
    }
    if (!numeric) {
      ++stats_.filter_errors;
      return false;
    }
    switch (filter.op) {
      case CompareOp::kGreater: return *x > *y;
      case CompareOp::kGreaterEqual: return *x >= *y;
      case CompareOp::kLess: return *x < *y;
      case CompareOp::kLessEqual: return *x <= *y;
      default: return false;
    }
  }

  bool ready(const CompiledFilter& filter) const {
    return std::all_of(filter.slots.begin(), filter.slots.end(),
                       [&](std::size_t s) { return bindings_[s].has_value(); });
  }

  // Evaluates filters that became fully bound at `depth`. Returns false if
  // one fails; marks the ones evaluated so they are undone on backtrack.
  bool check_filters(std::size_t depth) {
    for (std::size_t i = 0; i < filters_.size(); ++i) {
      if (filter_depth_[i] != kUnset || !ready(filters_[i])) continue;
      filter_depth_[i] = depth;
      if (!holds(filters_[i])) return false;
    }
    return true;
  }

  void undo_filters(std::size_t depth) {
    for (auto& d : filter_depth_) {
      if (d == depth) d = kUnset;
    }
  }

  std::size_t choose_pattern() const {
    std::size_t best = kUnset;
    std::size_t best_estimate = 0;
    for (std::size_t i = 0; i < patterns_.size(); ++i) {
      if (used_[i]) continue;
      const auto& p = patterns_[i];
      std::size_t e = graph_.estimate(value(p.s), value(p.p), value(p.o));
      if (best == kUnset || e < best_estimate) {
        best = i;
        best_estimate = e;
      }
    }
    return best;
  }

  // Binds an unbound variable position; false on a conflicting binding
  // (the same variable used twice within the pattern).
  bool bind(const Position& pos, TermId id, std::vector<std::size_t>& newly_bound) {
    if (pos.slot == kUnset) return pos.id == id;
    auto& b = bindings_[pos.slot];
    if (b) return *b == id;
    b = id;
    newly_bound.push_back(pos.slot);
    return true;
  }

  void search(std::size_t depth) {
    if (depth == patterns_.size()) {
      // Filters over variables the pattern never binds.
      bool ok = check_filters(depth + 1);
      for (std::size_t i = 0; i < filters_.size() && ok; ++i) {
        if (filter_depth_[i] == kUnset) {
          filter_depth_[i] = depth + 1;
          ok = holds(filters_[i]);
        }
      }
      undo_filters(depth + 1);
      if (ok) rows_.push_back(bindings_);
      return;
    }
    std::size_t chosen = choose_pattern();
    const CompiledPattern& p = patterns_[chosen];
    used_[chosen] = true;
    std::vector<std::size_t> newly_bound;
    graph_.for_each_match(value(p.s), value(p.p), value(p.o), [&](const rdf::TripleIds& t) {
      newly_bound.clear();
      bool ok = bind(p.s, t.subject, newly_bound) && bind(p.p, t.predicate, newly_bound) &&
                bind(p.o, t.object, newly_bound);
      if (ok && check_filters(depth)) search(depth + 1);
      undo_filters(depth);
      for (std::size_t slot : newly_bound) bindings_[slot].reset();
    });
    used_[chosen] = false;
  }

  const Query& query_;
  const rdf::Graph& graph_;
  EvaluationStats& stats_;
  std::vector<std::string> slot_names_;
  std::vector<CompiledPattern> patterns_;
  std::vector<CompiledFilter> filters_;
  std::vector<std::optional<TermId>> bindings_;
  std::vector<bool> used_;
  std::vector<std::size_t> filter_depth_;
  std::vector<std::vector<std::optional<TermId>>> rows_;
};

}  // namespace

std::weak_ordering compare_terms(const Term& a, const Term& b, bool numeric) {
  int ca = category(a, numeric);
  int cb = category(b, numeric);
  if (ca != cb) return ca <=> cb;
  if (ca == 2) {
    double x = *rdf::numeric_value(a.as_literal());
    double y = *rdf::numeric_value(b.as_literal());
    if (x < y) return std::weak_ordering::less;
    if (x > y) return std::weak_ordering::greater;
    return std::weak_ordering::equivalent;
  }
  return a <=> b;
}

std::vector<Solution> evaluate(const Query& query, const rdf::Graph& graph, EvaluationStats& stats) {
  return Evaluator(query, graph, stats).run();
}

std::vector<Solution> evaluate(const Query& query, const rdf::Graph& graph) {
  EvaluationStats stats;
  return evaluate(query, graph, stats);
}

}  // namespace pwakg::sparql
