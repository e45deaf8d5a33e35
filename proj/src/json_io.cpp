#include "qcon/json_io.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "qcon/errors.hpp"

namespace qcon {

using nlohmann::json;

double round12(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return std::strtod(buf, nullptr);
}

namespace {

std::vector<std::string> weight_labels(size_t count,
                                       const std::vector<std::string>& labels) {
  if (labels.size() == count) return labels;
  if (!labels.empty())
    throw invalid_argument("label list does not match the weight groups");
  std::vector<std::string> out;
  for (size_t g = 0; g < count; g++) out.push_back("w" + std::to_string(g));
  return out;
}

json weights_to_json(const WeightVector& w, const std::vector<std::string>& labels) {
  json obj = json::object();
  std::vector<std::string> names = weight_labels(w.size(), labels);
  for (size_t g = 0; g < w.size(); g++) obj[names[g]] = round12(w[g]);
  return obj;
}

}  // namespace

json graph_to_json(const WeightedGraph& g) {
  json edges = json::array();
  for (const Edge& e : g.edges()) edges.push_back({e.i, e.j, e.group});
  return json{{"n", g.n()}, {"groups", g.num_groups()}, {"edges", edges}};
}

WeightedGraph graph_from_json(const json& j) {
  if (!j.is_object() || !j.contains("n") || !j.contains("edges"))
    throw invalid_argument("graph JSON needs \"n\" and \"edges\"");
  int n = j.at("n").get<int>();
  const json& je = j.at("edges");
  if (!je.is_array()) throw invalid_argument("\"edges\" must be an array");
  bool all_pairs = true;
  for (const json& e : je) {
    if (!e.is_array() || (e.size() != 2 && e.size() != 3))
      throw invalid_argument("each edge must be [i,j] or [i,j,group]");
    all_pairs &= e.size() == 2;
  }
  std::vector<Edge> edges;
  int idx = 0;
  for (const json& e : je) {
    // Ungrouped inputs get one weight group per edge.
    int group = all_pairs ? idx : (e.size() == 3 ? e.at(2).get<int>() : -1);
    if (group < 0) throw invalid_argument("mixed grouped and ungrouped edges");
    edges.push_back({e.at(0).get<int>(), e.at(1).get<int>(), group});
    idx++;
  }
  WeightedGraph g(n, std::move(edges));
  if (j.contains("groups") && j.at("groups").get<int>() != g.num_groups())
    throw invalid_argument("\"groups\" does not match the edge group labels");
  return g;
}

WeightedGraph load_graph_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw invalid_argument("cannot open graph file: " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw invalid_argument("invalid JSON in " + path + ": " + e.what());
  }
  return graph_from_json(j);
}

json induced_to_json(const InducedGraph& ig) {
  json j = graph_to_json(ig.graph);
  j["partition"] = ig.partition.parts();
  json labels = json::array();
  bool digits = ig.partition.num_parts() <= 9;
  for (const Tabloid& t : ig.vertex_labels) {
    if (digits)
      labels.push_back(t.to_string());
    else
      labels.push_back(t.word);
  }
  j["vertex_labels"] = labels;
  return j;
}

json result_to_json(const OptimizationResult& r,
                    const std::vector<std::string>& labels) {
  return json{{"weights", weights_to_json(r.weights, labels)},
              {"slem", round12(r.slem)},
              {"regime", regime_name(r.regime)},
              {"lambda2", round12(r.lambda2)},
              {"lambda_max", round12(r.lambda_max)},
              {"converged", r.converged},
              {"iterations", r.iterations}};
}

json complete_optimum_to_json(const CompleteOptimum& c) {
  return json{{"N", c.N},
              {"d", c.d},
              {"w", round12(c.w)},
              {"slem", round12(c.slem)},
              {"argmin_partition", c.argmin.parts()}};
}

json cross_validation_to_json(const CrossValidation& cv,
                              const std::vector<std::string>& labels) {
  json dw = json::array();
  for (double d : cv.dw) dw.push_back(round12(d));
  return json{{"closed", result_to_json(cv.closed, labels)},
              {"solved", result_to_json(cv.solved, labels)},
              {"dslem", round12(cv.dslem)},
              {"dw", dw},
              {"pass", cv.pass}};
}

}  // namespace qcon
