#include <cmath>

#include "doctest.h"
#include "qcon/schreier.hpp"
#include "qcon/spectra.hpp"

using namespace qcon;

namespace {

WeightedGraph family(const std::string& text) {
  return build_family(parse_family(text));
}

}  // namespace

TEST_CASE("path(3) induced on (1,1,1) is the 6-cycle") {
  WeightedGraph base = family("path(3)");
  InducedGraph ig = induced_graph(base, Partition({1, 1, 1}));
  CHECK(ig.graph.n() == 6);
  CHECK(ig.graph.num_edges() == 6);
  CHECK(ig.graph.num_groups() == base.num_groups());
  Spectrum sp = sym_eigenvalues(induced_laplacian(base, Partition({1, 1, 1}), {1.0}));
  double expected[] = {0, 1, 1, 3, 3, 4};
  REQUIRE(sp.size() == 6);
  for (int i = 0; i < 6; i++)
    CHECK(std::fabs(sp.values[i] - (expected[i])) <= 1e-10);
}

TEST_CASE("complete(3) induced on (1,1,1) spectrum") {
  WeightedGraph base = family("complete(3)");
  Spectrum sp = sym_eigenvalues(induced_laplacian(base, Partition({1, 1, 1}), {1.0}));
  double expected[] = {0, 3, 3, 3, 3, 6};
  REQUIRE(sp.size() == 6);
  for (int i = 0; i < 6; i++)
    CHECK(std::fabs(sp.values[i] - (expected[i])) <= 1e-10);
}

TEST_CASE("one-block partition collapses to a single vertex") {
  WeightedGraph base = family("complete(4)");
  InducedGraph ig = induced_graph(base, Partition({4}));
  CHECK(ig.graph.n() == 1);
  CHECK(ig.graph.num_edges() == 0);
  Matrix L = induced_laplacian(base, Partition({4}), {0.3});
  CHECK(L.n() == 1);
  CHECK(L(0, 0) == doctest::Approx(0.0));
}

TEST_CASE("two-row hook partition reproduces the base graph") {
  for (const char* text : {"path(4)", "star(5)", "cycle(6)", "paw"}) {
    WeightedGraph base = family(text);
    std::vector<int> parts{base.n() - 1, 1};
    CHECK(canonical_bijection_check(base, Partition(parts)));
    InducedGraph ig = induced_graph(base, Partition(parts));
    CHECK(ig.graph.n() == base.n());
    CHECK(ig.graph.num_edges() == base.num_edges());
  }
  CHECK_THROWS_AS(canonical_bijection_check(family("path(4)"), Partition({2, 2})),
                  invalid_argument);
}

TEST_CASE("induced second eigenvalue equals the base one") {
  WeightedGraph base = family("star(4)");
  WeightVector w{0.35};
  double base_l2 = sym_eigenvalues(base.laplacian(w)).values[1];
  for (const Partition& p :
       {Partition({3, 1}), Partition({2, 2}), Partition({2, 1, 1}),
        Partition({1, 1, 1, 1})}) {
    double l2 = sym_eigenvalues(induced_laplacian(base, p, w)).values[1];
    CHECK(std::fabs(l2 - (base_l2)) <= 1e-10);
  }
}

TEST_CASE("diagonal compensation keeps Laplacian row sums at zero") {
  WeightedGraph base = family("paw");
  WeightVector w{0.2, 0.3, 0.1};
  Matrix L = induced_laplacian(base, Partition({2, 2}), w);
  for (int i = 0; i < L.n(); i++) {
    double row = 0;
    for (int j = 0; j < L.n(); j++) row += L(i, j);
    CHECK(std::fabs(row - (0.0)) <= 1e-12);
  }
}

TEST_CASE("partition and base sizes must match") {
  CHECK_THROWS_AS(induced_graph(family("path(3)"), Partition({2, 2})),
                  invalid_argument);
  CHECK_THROWS_AS(induced_laplacian(family("path(3)"), Partition({2, 1}), {1.0, 1.0}),
                  invalid_argument);
}

TEST_CASE("vertex-count guard") {
  std::vector<int> ones(16, 1);
  CHECK_THROWS_AS(induced_graph(family("complete(16)"), Partition(ones)),
                  resource_error);
}
