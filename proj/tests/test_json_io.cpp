#include <cstdio>
#include <fstream>

#include "doctest.h"
#include "qcon/json_io.hpp"
#include "qcon/optimizer.hpp"

using nlohmann::json;
using namespace qcon;

TEST_CASE("graph serialization round trip") {
  WeightedGraph g = build_family(parse_family("path(4)"));
  json j = graph_to_json(g);
  CHECK(j["n"] == 4);
  CHECK(j["groups"] == 2);
  CHECK(j["edges"].size() == 3);
  WeightedGraph back = graph_from_json(j);
  CHECK(back.n() == g.n());
  CHECK(back.num_groups() == g.num_groups());
  CHECK(graph_to_json(back) == j);
}

TEST_CASE("plain edge pairs get one group per edge") {
  json j{{"n", 3}, {"edges", {{0, 1}, {1, 2}}}};
  WeightedGraph g = graph_from_json(j);
  CHECK(g.num_groups() == 2);
  CHECK(g.edges()[0].group == 0);
  CHECK(g.edges()[1].group == 1);
}

TEST_CASE("malformed graph JSON is rejected") {
  CHECK_THROWS_AS(graph_from_json(json{{"edges", {{0, 1}}}}), invalid_argument);
  CHECK_THROWS_AS(graph_from_json(json{{"n", 2}}), invalid_argument);
  // mixed pair/triple edges
  CHECK_THROWS_AS(graph_from_json(json{{"n", 3}, {"edges", {{0, 1}, {1, 2, 0}}}}),
                  invalid_argument);
  // declared group count too small
  CHECK_THROWS_AS(
      graph_from_json(json{{"n", 3}, {"groups", 1}, {"edges", {{0, 1, 0}, {1, 2, 1}}}}),
      invalid_argument);
}

TEST_CASE("graph files load and fail loudly") {
  const char* path = "qcon_test_graph.json";
  {
    std::ofstream f(path);
    f << R"({"n": 3, "edges": [[0,1],[1,2]]})";
  }
  WeightedGraph g = load_graph_file(path);
  CHECK(g.n() == 3);
  std::remove(path);
  CHECK_THROWS_AS(load_graph_file(path), invalid_argument);
  {
    std::ofstream f(path);
    f << "{not json";
  }
  CHECK_THROWS_AS(load_graph_file(path), invalid_argument);
  std::remove(path);
}

TEST_CASE("induced graph serialization carries labels") {
  WeightedGraph base = build_family(parse_family("path(3)"));
  InducedGraph ig = induced_graph(base, Partition({2, 1}));
  json j = induced_to_json(ig);
  CHECK(j["n"] == 3);
  CHECK(j["partition"] == json::array({2, 1}));
  CHECK(j["vertex_labels"] == json::array({"112", "121", "211"}));
}

TEST_CASE("results serialize with labeled weights") {
  OptimizationResult r = closed_form(parse_family("paw"), Regime::AtMostDSquared);
  json j = result_to_json(r, family_group_labels(parse_family("paw")));
  CHECK(j["regime"] == "at_most_d_squared");
  CHECK(j["weights"].contains("w-1"));
  CHECK(j["weights"].contains("w0"));
  CHECK(j["weights"].contains("w1"));
  CHECK(j["converged"] == true);
  CHECK(j.contains("slem"));
  CHECK(j.contains("lambda2"));
  CHECK(j.contains("lambda_max"));
  CHECK(j.contains("iterations"));

  json fallback = result_to_json(r);
  CHECK(fallback["weights"].contains("w0"));
  CHECK(fallback["weights"].contains("w2"));
}

TEST_CASE("rounding to 12 significant digits is idempotent") {
  CHECK(round12(0.1 + 0.2) == 0.3);
  double third = 1.0 / 3.0;
  CHECK(round12(round12(third)) == round12(third));
  CHECK(round12(0.0) == 0.0);
  CHECK(round12(-1.25e-300) == -1.25e-300);
}

TEST_CASE("complete optimum serialization") {
  json j = complete_optimum_to_json(complete_graph_optimum(6, 2));
  CHECK(j["N"] == 6);
  CHECK(j["d"] == 2);
  CHECK(j["argmin_partition"] == json::array({2, 2, 1, 1}));
  CHECK(j["slem"] == round12(7.0 / 13));
  CHECK(j["w"] == round12(1.0 / 13));
}

TEST_CASE("cross validation serialization") {
  CrossValidation cv = cross_validate(parse_family("path(3)"), Regime::AtMostDSquared);
  json j = cross_validation_to_json(cv, {"w0"});
  CHECK(j.contains("closed"));
  CHECK(j.contains("solved"));
  CHECK(j.contains("dslem"));
  CHECK(j["dw"].size() == 1);
  CHECK(j["pass"] == true);
}
