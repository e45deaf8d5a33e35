#include <algorithm>
#include <cmath>
#include <set>
#include <tuple>

#include "doctest.h"
#include "qcon/graph.hpp"

using namespace qcon;

namespace {

std::set<std::tuple<int, int, int>> edge_set(const WeightedGraph& g) {
  std::set<std::tuple<int, int, int>> s;
  for (const Edge& e : g.edges()) s.insert({e.i, e.j, e.group});
  return s;
}

WeightedGraph family(const std::string& text) {
  return build_family(parse_family(text));
}

}  // namespace

TEST_CASE("graph constructor validation") {
  CHECK_THROWS_AS(WeightedGraph(0, {}), invalid_argument);
  CHECK_THROWS_AS(WeightedGraph(2, {{0, 0, 0}}), invalid_argument);
  CHECK_THROWS_AS(WeightedGraph(2, {{0, 1, 0}, {1, 0, 0}}), invalid_argument);
  CHECK_THROWS_AS(WeightedGraph(2, {{0, 2, 0}}), invalid_argument);
  CHECK_THROWS_AS(WeightedGraph(2, {{0, 1, -1}}), invalid_argument);
  CHECK_THROWS_AS(WeightedGraph(3, {{0, 1, 1}}), invalid_argument);  // group 0 empty
}

TEST_CASE("path groups pair symmetric edges") {
  WeightedGraph g = family("path(4)");
  CHECK(g.n() == 4);
  CHECK(g.num_edges() == 3);
  CHECK(g.num_groups() == 2);
  CHECK(g.group_size(0) == 1);  // w0 is the middle edge
  CHECK(g.group_size(1) == 2);  // the outer pair shares a group
  CHECK(family_group_labels(parse_family("path(4)")) ==
        std::vector<std::string>{"w0", "w1"});

  WeightedGraph g5 = family("path(5)");
  CHECK(g5.num_groups() == 2);
  CHECK(g5.group_size(0) == 2);
  CHECK(g5.group_size(1) == 2);
}

TEST_CASE("single-group families") {
  for (const char* text : {"cycle(5)", "star(6)", "complete(5)"}) {
    WeightedGraph g = family(text);
    CHECK(g.num_groups() == 1);
    CHECK(g.is_connected());
  }
  CHECK(family("cycle(5)").num_edges() == 5);
  CHECK(family("star(6)").num_edges() == 5);
  CHECK(family("complete(5)").num_edges() == 10);
}

TEST_CASE("paw is lollipop(2,1)") {
  CHECK(edge_set(family("paw")) == edge_set(family("lollipop(2,1)")));
  WeightedGraph g = family("paw");
  CHECK(g.n() == 4);
  CHECK(g.num_edges() == 4);
  CHECK(g.num_groups() == 3);
  CHECK(family_group_labels(parse_family("paw")) ==
        std::vector<std::string>{"w-1", "w0", "w1"});
}

TEST_CASE("lollipop layout: clique, hinge fan, tail path") {
  WeightedGraph g = family("lollipop(3,2)");
  CHECK(g.n() == 6);  // hinge + 3 clique + 2 tail
  CHECK(g.num_edges() == 3 + 3 + 2);
  CHECK(g.num_groups() == 4);  // w-1, w0, w1, w2
  CHECK(g.group_size(0) == 3);
  CHECK(g.group_size(1) == 3);
  CHECK(g.group_size(2) == 1);
  CHECK(g.group_size(3) == 1);

  // p = 1 has no clique-internal edges; that group must disappear.
  WeightedGraph g1 = family("lollipop(1,2)");
  CHECK(g1.num_groups() == 3);
  CHECK(family_group_labels(parse_family("lollipop(1,2)")) ==
        std::vector<std::string>{"w0", "w1", "w2"});
}

TEST_CASE("coupled_complete block layout") {
  WeightedGraph g = family("coupled_complete(1,3,1)");
  CHECK(g.n() == 5);
  CHECK(g.num_edges() == 3 + 3 + 3);  // A-B fan, B clique, B-C fan
  CHECK(g.num_groups() == 3);
  CHECK(family_group_labels(parse_family("coupled_complete(1,3,1)")) ==
        std::vector<std::string>{"w-1", "w0", "w1"});

  WeightedGraph g2 = family("coupled_complete(2,3,2)");
  CHECK(g2.n() == 7);
  CHECK(g2.num_groups() == 5);
  CHECK(family_group_labels(parse_family("coupled_complete(2,3,2)")) ==
        std::vector<std::string>{"w-2", "w-1", "w0", "w1", "w2"});
  CHECK(g2.group_size(0) == 1);  // K_2 inside block A
  CHECK(g2.group_size(1) == 6);
  CHECK(g2.group_size(2) == 3);
}

TEST_CASE("symmetric_star and ccs_star shapes") {
  WeightedGraph s = family("symmetric_star(5,2)");
  CHECK(s.n() == 1 + 5 * 2);
  CHECK(s.num_groups() == 2);
  CHECK(s.is_connected());

  WeightedGraph c = family("ccs_star(3,2)");
  CHECK(c.n() == 3 + 3 * 2);       // clique plus an arm per clique vertex
  CHECK(c.num_groups() == 1 + 2);  // clique edges, then one group per arm step
  CHECK(c.is_connected());

  WeightedGraph c2 = family("ccs_star2(5,1,2)");
  CHECK(c2.n() == 5 + 5 * 1 + 5 * 2);
  CHECK(c2.num_groups() == 1 + 1 + 2);
  CHECK(family_group_labels(parse_family("ccs_star2(5,1,2)")) ==
        std::vector<std::string>{"w-1", "w0", "w1", "w2"});
  CHECK(c2.is_connected());
}

TEST_CASE("palm shape: leaves plus one tail") {
  WeightedGraph g = family("palm(4,2)");
  CHECK(g.n() == 1 + 4 + 2);
  CHECK(g.num_groups() == 1 + 2);
  CHECK(g.group_size(0) == 4);
  CHECK(g.is_connected());
}

TEST_CASE("cartesian product") {
  WeightedGraph k2 = family("complete(2)");
  WeightedGraph c4 = cartesian_product(k2, k2);
  CHECK(c4.n() == 4);
  CHECK(c4.num_edges() == 4);
  CHECK(c4.num_groups() == 2);

  WeightedGraph prism = family("prism(3,2)");
  CHECK(prism.n() == 6);
  CHECK(prism.num_edges() == 3 * 2 + 3 * 1);
  CHECK(prism.num_groups() == 2);
  CHECK(family_group_labels(parse_family("prism(3,2)")) ==
        std::vector<std::string>{"w1", "w2"});
  CHECK(edge_set(prism) ==
        edge_set(family("cartesian_product(complete(3),complete(2))")));
}

TEST_CASE("connectivity detection") {
  CHECK(family("path(2)").is_connected());
  WeightedGraph split(4, {{0, 1, 0}, {2, 3, 1}});
  CHECK_FALSE(split.is_connected());
}

TEST_CASE("laplacian and total weight") {
  WeightedGraph p3 = family("path(3)");
  Matrix L = p3.laplacian({1.0});
  CHECK(L(0, 0) == doctest::Approx(1.0));
  CHECK(L(1, 1) == doctest::Approx(2.0));
  CHECK(L(0, 1) == doctest::Approx(-1.0));
  CHECK(L(0, 2) == doctest::Approx(0.0));
  for (int i = 0; i < 3; i++) {
    double row = 0;
    for (int j = 0; j < 3; j++) row += L(i, j);
    CHECK(row == doctest::Approx(0.0));
  }

  WeightedGraph p4 = family("path(4)");
  CHECK(p4.total_weight({0.4, 0.3}) == doctest::Approx(0.4 + 2 * 0.3));
  CHECK_THROWS_AS(p4.laplacian({0.4}), invalid_argument);
}

TEST_CASE("family parsing round trip and errors") {
  for (const char* text :
       {"path(7)", "cycle(5)", "star(9)", "complete(4)", "lollipop(3,2)",
        "palm(4,2)", "ccs_star(3,2)", "ccs_star2(5,1,2)", "symmetric_star(5,2)",
        "prism(3,2)", "coupled_complete(2,3,2)", "paw",
        "cartesian_product(complete(3),path(3))"}) {
    FamilySpec spec = parse_family(text);
    CHECK(family_to_string(spec) == text);
    WeightedGraph g = build_family(spec);
    CHECK(g.is_connected());
    CHECK(family_group_labels(spec).size() ==
          static_cast<size_t>(g.num_groups()));
  }
  // syntax errors surface at parse time
  CHECK_THROWS_AS(parse_family("triangle(3)"), invalid_argument);
  CHECK_THROWS_AS(parse_family("path(4)x"), invalid_argument);
  CHECK_THROWS_AS(parse_family("lollipop(3)"), invalid_argument);
  // range errors surface at build time
  CHECK_THROWS_AS(family("path(1)"), invalid_argument);
  CHECK_THROWS_AS(family("cycle(2)"), invalid_argument);
  CHECK_THROWS_AS(family("ccs_star(1,2)"), invalid_argument);
  CHECK_THROWS_AS(family("cartesian_product(complete(3))"), invalid_argument);
}
