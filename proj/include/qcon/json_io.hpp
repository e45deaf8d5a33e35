#pragma once

#include <string>

#include <nlohmann/json.hpp>

#include "qcon/graph.hpp"
#include "qcon/optimizer.hpp"
#include "qcon/scheme.hpp"
#include "qcon/schreier.hpp"

namespace qcon {

// All emitted doubles are rounded to 12 significant digits so identical
// inputs serialize byte-identically across platforms.
double round12(double x);

nlohmann::json graph_to_json(const WeightedGraph& g);
WeightedGraph graph_from_json(const nlohmann::json& j);
WeightedGraph load_graph_file(const std::string& path);

nlohmann::json induced_to_json(const InducedGraph& ig);

// Weight vectors serialize as an object keyed by group label; an empty label
// list falls back to "w0", "w1", ...
nlohmann::json result_to_json(const OptimizationResult& r,
                              const std::vector<std::string>& labels = {});
nlohmann::json complete_optimum_to_json(const CompleteOptimum& c);
nlohmann::json cross_validation_to_json(const CrossValidation& cv,
                                        const std::vector<std::string>& labels = {});

}  // namespace qcon
