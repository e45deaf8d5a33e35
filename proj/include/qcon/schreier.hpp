#pragma once

#include <vector>

#include "qcon/graph.hpp"
#include "qcon/matrix.hpp"
#include "qcon/partitions.hpp"

namespace qcon {

// Schreier graph of a partition over a base graph: vertices are tabloids,
// edges join tabloids exchanged by a transposition along a base edge
// (inheriting that edge's weight group). Transpositions fixing a tabloid
// produce no edge; their weight reappears on the Laplacian diagonal, which
// is why induced_laplacian() coincides with the plain weighted Laplacian
// of `graph`.
struct InducedGraph {
  Partition partition;
  WeightedGraph base;
  WeightedGraph graph;
  std::vector<Tabloid> vertex_labels;
};

InducedGraph induced_graph(const WeightedGraph& base, const Partition& p);

Matrix induced_laplacian(const WeightedGraph& base, const Partition& p,
                         const WeightVector& w);

// For p = (N-1,1): is "tabloid with symbol 2 at position j" -> vertex j a
// weighted-graph isomorphism onto the base?
bool canonical_bijection_check(const WeightedGraph& base, const Partition& p);

}  // namespace qcon
