#include "qcon/schreier.hpp"

#include <algorithm>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "qcon/errors.hpp"

namespace qcon {

namespace {

constexpr std::int64_t kMaxVertices = 1'000'000;

// Two distinct tabloids joined by a transposition differ in exactly the two
// swapped positions, so each induced edge comes from a unique base edge and
// no parallel edges can arise.
std::vector<Edge> induced_edges(const WeightedGraph& base, const Partition& p,
                                const std::vector<Tabloid>& tabs) {
  TabloidIndexer indexer(p);
  std::vector<Edge> edges;
  for (std::int64_t v = 0; v < static_cast<std::int64_t>(tabs.size()); v++) {
    for (const Edge& e : base.edges()) {
      if (tabs[v].word[e.i] == tabs[v].word[e.j]) continue;
      Tabloid moved = transpose_tabloid(tabs[v], e.i + 1, e.j + 1);
      std::int64_t u = indexer.rank(moved);
      if (u > v)
        edges.push_back({static_cast<int>(v), static_cast<int>(u), e.group});
    }
  }
  return edges;
}

}  // namespace

InducedGraph induced_graph(const WeightedGraph& base, const Partition& p) {
  if (p.n() != base.n())
    throw invalid_argument("partition size must match the base vertex count");
  if (tabloid_count(p) > kMaxVertices)
    throw resource_error("induced graph would exceed " +
                         std::to_string(kMaxVertices) + " vertices");
  std::vector<Tabloid> tabs = enumerate_tabloids(p);
  std::vector<Edge> edges = induced_edges(base, p, tabs);
  WeightedGraph graph(static_cast<int>(tabs.size()), std::move(edges));
  return InducedGraph{p, base, std::move(graph), std::move(tabs)};
}

Matrix induced_laplacian(const WeightedGraph& base, const Partition& p,
                         const WeightVector& w) {
  if (static_cast<int>(w.size()) != base.num_groups())
    throw invalid_argument("weight vector length != number of base groups");
  InducedGraph ig = induced_graph(base, p);
  Matrix L(ig.graph.n());
  for (const Edge& e : ig.graph.edges()) {
    double wi = w[e.group];
    L(e.i, e.i) += wi;
    L(e.j, e.j) += wi;
    L(e.i, e.j) -= wi;
    L(e.j, e.i) -= wi;
  }
  return L;
}

bool canonical_bijection_check(const WeightedGraph& base, const Partition& p) {
  int N = base.n();
  if (N < 2 || p.num_parts() != 2 || p.part(0) != N - 1 || p.part(1) != 1)
    throw invalid_argument("canonical bijection is defined for shape (N-1,1)");
  InducedGraph ig = induced_graph(base, p);
  if (ig.graph.n() != N) return false;
  // Tabloid -> position of its unique symbol 2 (0-based).
  std::vector<int> pos(ig.graph.n(), -1);
  for (int v = 0; v < ig.graph.n(); v++) {
    const std::vector<int>& word = ig.vertex_labels[v].word;
    pos[v] = static_cast<int>(std::find(word.begin(), word.end(), 2) -
                              word.begin());
  }
  auto key = [](int i, int j, int g) {
    if (i > j) std::swap(i, j);
    return std::tuple<int, int, int>(i, j, g);
  };
  std::vector<std::tuple<int, int, int>> got, want;
  for (const Edge& e : ig.graph.edges()) got.push_back(key(pos[e.i], pos[e.j], e.group));
  for (const Edge& e : base.edges()) want.push_back(key(e.i, e.j, e.group));
  std::sort(got.begin(), got.end());
  std::sort(want.begin(), want.end());
  return got == want;
}

}  // namespace qcon
