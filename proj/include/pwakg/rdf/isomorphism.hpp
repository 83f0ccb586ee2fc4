#pragma once

#include <cstddef>

#include "pwakg/rdf/graph.hpp"

namespace pwakg::rdf {

// Documented limit of `isomorphic`; above it a CapacityError is thrown.
inline constexpr std::size_t kMaxIsomorphismBlankNodes = 64;

// True iff some bijection between the blank nodes of `a` and `b` maps a's
// triple set exactly onto b's. Ground triples must match verbatim.
//
// Blank nodes are first partitioned by iterated neighbourhood colouring,
// then a backtracking search assigns a's blanks to same-coloured blanks of
// b, checking every triple whose blanks are all assigned.
bool isomorphic(const Graph& a, const Graph& b);

}  // namespace pwakg::rdf
