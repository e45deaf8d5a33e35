#pragma once

#include <string>
#include <vector>

#include "qcon/errors.hpp"
#include "qcon/matrix.hpp"

namespace qcon {

// Undirected edge between vertices i < j, tagged with a symmetry-group index.
// Edges sharing a group index are constrained to carry equal weight.
struct Edge {
  int i = 0;
  int j = 0;
  int group = 0;
};

using WeightVector = std::vector<double>;  // one entry per edge group

class WeightedGraph {
 public:
  WeightedGraph(int n, std::vector<Edge> edges);

  int n() const { return n_; }
  int num_edges() const { return static_cast<int>(edges_.size()); }
  int num_groups() const { return num_groups_; }
  const std::vector<Edge>& edges() const { return edges_; }
  int group_size(int g) const { return group_sizes_[g]; }

  bool is_connected() const;

  // Weighted Laplacian L = D - A with per-group weights.
  Matrix laplacian(const WeightVector& w) const;

  // Sum of all edge weights.
  double total_weight(const WeightVector& w) const;

 private:
  int n_;
  std::vector<Edge> edges_;
  int num_groups_;
  std::vector<int> group_sizes_;
};

// Cartesian product; edge groups are offset so factor groups stay distinct
// (product groups = groups(a) then groups(b)).
WeightedGraph cartesian_product(const WeightedGraph& a, const WeightedGraph& b);

enum class Family {
  path,
  cycle,
  star,
  complete,
  paw,               // triangle with a pendant vertex (= lollipop(2,1))
  lollipop,          // K_{p+1} with a path of q extra vertices hung off one vertex
  ccs_star,          // K_p core, each core vertex grows a path of q vertices
  ccs_star2,         // K_p core, each core vertex grows two paths (q1 and q2)
  symmetric_star,    // p paths of q vertices joined at one shared center
  palm,              // p leaves plus a path of q vertices from a common root
  prism,             // K_{n1} x K_{n2} Cartesian product
  coupled_complete,  // complete on blocks n1+n2 and n2+n3 sharing the middle block
  cartesian_product,  // product of the factor specs, factor groups kept distinct
};

struct FamilySpec {
  Family family = Family::path;
  int n = 0;   // path/cycle/star/complete order
  int p = 0;   // core size / branch count
  int q = 0;   // branch length
  int q1 = 0;  // ccs_star2 first branch length
  int q2 = 0;  // ccs_star2 second branch length
  int n1 = 0;  // prism / coupled_complete block sizes
  int n2 = 0;
  int n3 = 0;
  std::vector<FamilySpec> factors;  // cartesian_product only
};

FamilySpec parse_family(const std::string& text);  // e.g. "palm(4,2)", "path(6)"
std::string family_to_string(const FamilySpec& spec);

WeightedGraph build_family(const FamilySpec& spec);

// Human-readable label per edge group, in group order (e.g. "w0", "w1", "w-1").
std::vector<std::string> family_group_labels(const FamilySpec& spec);

}  // namespace qcon
