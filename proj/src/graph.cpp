#include "qcon/graph.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>
#include <utility>
#include <vector>

#include "qcon/errors.hpp"

namespace qcon {

WeightedGraph::WeightedGraph(int n, std::vector<Edge> edges)
    : n_(n), num_groups_(0), edges_(std::move(edges)) {
  if (n_ < 1) throw invalid_argument("graph needs at least one vertex");
  std::set<std::pair<int, int>> seen;
  for (Edge& e : edges_) {
    if (e.i > e.j) std::swap(e.i, e.j);
    if (e.i < 0 || e.j >= n_ || e.i == e.j)
      throw invalid_argument("edge endpoints out of range");
    if (e.group < 0) throw invalid_argument("negative weight group");
    if (!seen.insert({e.i, e.j}).second)
      throw invalid_argument("duplicate edge");
    num_groups_ = std::max(num_groups_, e.group + 1);
  }
  group_sizes_.assign(num_groups_, 0);
  for (const Edge& e : edges_) group_sizes_[e.group]++;
  for (int g = 0; g < num_groups_; g++)
    if (group_sizes_[g] == 0) throw invalid_argument("empty weight group");
}

bool WeightedGraph::is_connected() const {
  std::vector<std::vector<int>> adj(n_);
  for (const Edge& e : edges_) {
    adj[e.i].push_back(e.j);
    adj[e.j].push_back(e.i);
  }
  std::vector<char> vis(n_, 0);
  std::vector<int> stack{0};
  vis[0] = 1;
  int count = 1;
  while (!stack.empty()) {
    int u = stack.back();
    stack.pop_back();
    for (int v : adj[u])
      if (!vis[v]) {
        vis[v] = 1;
        count++;
        stack.push_back(v);
      }
  }
  return count == n_;
}

Matrix WeightedGraph::laplacian(const WeightVector& w) const {
  if (static_cast<int>(w.size()) != num_groups_)
    throw invalid_argument("weight vector length != number of groups");
  Matrix L(n_);
  for (const Edge& e : edges_) {
    double wi = w[e.group];
    L(e.i, e.i) += wi;
    L(e.j, e.j) += wi;
    L(e.i, e.j) -= wi;
    L(e.j, e.i) -= wi;
  }
  return L;
}

double WeightedGraph::total_weight(const WeightVector& w) const {
  if (static_cast<int>(w.size()) != num_groups_)
    throw invalid_argument("weight vector length != number of groups");
  double s = 0;
  for (const Edge& e : edges_) s += w[e.group];
  return s;
}

WeightedGraph cartesian_product(const WeightedGraph& a, const WeightedGraph& b) {
  int na = a.n(), nb = b.n();
  std::vector<Edge> edges;
  edges.reserve(static_cast<size_t>(a.num_edges()) * nb +
                static_cast<size_t>(b.num_edges()) * na);
  for (const Edge& e : a.edges())
    for (int v = 0; v < nb; v++)
      edges.push_back({e.i * nb + v, e.j * nb + v, e.group});
  for (const Edge& e : b.edges())
    for (int u = 0; u < na; u++)
      edges.push_back({u * nb + e.i, u * nb + e.j, a.num_groups() + e.group});
  return WeightedGraph(na * nb, std::move(edges));
}

namespace {

// Family construction uses provisional group ids; groups that end up empty
// (e.g. the core-core group of lollipop(1,q)) are removed and the rest are
// renumbered in ascending order, keeping their labels.
struct Build {
  int n = 0;
  std::vector<Edge> edges;
  std::vector<std::string> labels;
};

void collapse_empty_groups(Build& b) {
  int g_max = 0;
  for (const Edge& e : b.edges) g_max = std::max(g_max, e.group + 1);
  std::vector<int> size(std::max<size_t>(g_max, b.labels.size()), 0);
  for (const Edge& e : b.edges) size[e.group]++;
  std::vector<int> remap(size.size(), -1);
  std::vector<std::string> labels;
  int next = 0;
  for (size_t g = 0; g < size.size(); g++)
    if (size[g] > 0) {
      remap[g] = next++;
      labels.push_back(g < b.labels.size() ? b.labels[g]
                                           : "w" + std::to_string(g));
    }
  for (Edge& e : b.edges) e.group = remap[e.group];
  b.labels = std::move(labels);
}

Build build_path(int n) {
  if (n < 2) throw invalid_argument("path needs n >= 2");
  Build b;
  b.n = n;
  int m = (n - 1 + 1) / 2;  // ceil((n-1)/2): distinct distances from the middle
  for (int k = 0; k + 1 < n; k++)
    b.edges.push_back({k, k + 1, (m - 1) - std::min(k, n - 2 - k)});
  for (int t = 0; t < m; t++) b.labels.push_back("w" + std::to_string(t));
  return b;
}

Build build_cycle(int n) {
  if (n < 3) throw invalid_argument("cycle needs n >= 3");
  Build b;
  b.n = n;
  for (int k = 0; k < n; k++) b.edges.push_back({k, (k + 1) % n, 0});
  b.labels = {"w"};
  return b;
}

Build build_star(int n) {
  if (n < 3) throw invalid_argument("star needs n >= 3");
  Build b;
  b.n = n;
  for (int k = 1; k < n; k++) b.edges.push_back({0, k, 0});
  b.labels = {"w"};
  return b;
}

Build build_complete(int n) {
  if (n < 2) throw invalid_argument("complete needs n >= 2");
  Build b;
  b.n = n;
  for (int i = 0; i < n; i++)
    for (int j = i + 1; j < n; j++) b.edges.push_back({i, j, 0});
  b.labels = {"w"};
  return b;
}

// Vertex 0 is the hinge, 1..p the rest of the (p+1)-clique, p+1..p+q the tail.
Build build_lollipop(int p, int q) {
  if (p < 1 || q < 1) throw invalid_argument("lollipop needs p,q >= 1");
  Build b;
  b.n = p + 1 + q;
  for (int i = 1; i <= p; i++)
    for (int j = i + 1; j <= p; j++) b.edges.push_back({i, j, 0});
  for (int i = 1; i <= p; i++) b.edges.push_back({0, i, 1});
  b.edges.push_back({0, p + 1, 2});
  for (int k = 2; k <= q; k++) b.edges.push_back({p + k - 1, p + k, k + 1});
  b.labels = {"w-1", "w0"};
  for (int k = 1; k <= q; k++) b.labels.push_back("w" + std::to_string(k));
  return b;
}

Build build_ccs_star(int p, int q) {
  if (p < 2 || q < 1) throw invalid_argument("ccs_star needs p >= 2, q >= 1");
  Build b;
  b.n = p * (1 + q);
  for (int i = 0; i < p; i++)
    for (int j = i + 1; j < p; j++) b.edges.push_back({i, j, 0});
  for (int i = 0; i < p; i++) {
    int base = p + i * q;
    b.edges.push_back({i, base, 1});
    for (int k = 2; k <= q; k++) b.edges.push_back({base + k - 2, base + k - 1, k});
  }
  for (int t = 0; t <= q; t++) b.labels.push_back("w" + std::to_string(t));
  return b;
}

// Group order: outermost first-branch edges, ..., core clique, ..., outermost
// second-branch edges, so weights read w-q1, ..., w-1, w0, w1, ..., wq2.
Build build_ccs_star2(int p, int q1, int q2) {
  if (p < 2 || q1 < 1 || q2 < 1)
    throw invalid_argument("ccs_star2 needs p >= 2, q1,q2 >= 1");
  Build b;
  b.n = p * (1 + q1 + q2);
  for (int i = 0; i < p; i++)
    for (int j = i + 1; j < p; j++) b.edges.push_back({i, j, q1});
  for (int i = 0; i < p; i++) {
    int base1 = p + i * q1;
    b.edges.push_back({i, base1, q1 - 1});
    for (int k = 2; k <= q1; k++)
      b.edges.push_back({base1 + k - 2, base1 + k - 1, q1 - k});
    int base2 = p + p * q1 + i * q2;
    b.edges.push_back({i, base2, q1 + 1});
    for (int k = 2; k <= q2; k++)
      b.edges.push_back({base2 + k - 2, base2 + k - 1, q1 + k});
  }
  for (int k = q1; k >= 1; k--) b.labels.push_back("w-" + std::to_string(k));
  b.labels.push_back("w0");
  for (int k = 1; k <= q2; k++) b.labels.push_back("w" + std::to_string(k));
  return b;
}

Build build_symmetric_star(int p, int q) {
  if (p < 2 || q < 1)
    throw invalid_argument("symmetric_star needs p >= 2, q >= 1");
  Build b;
  b.n = 1 + p * q;
  for (int i = 0; i < p; i++) {
    int base = 1 + i * q;
    b.edges.push_back({0, base, 0});
    for (int k = 2; k <= q; k++) b.edges.push_back({base + k - 2, base + k - 1, k - 1});
  }
  for (int k = 1; k <= q; k++) b.labels.push_back("w" + std::to_string(k));
  return b;
}

Build build_palm(int p, int q) {
  if (p < 1 || q < 1) throw invalid_argument("palm needs p,q >= 1");
  Build b;
  b.n = 1 + p + q;
  for (int i = 1; i <= p; i++) b.edges.push_back({0, i, 0});
  b.edges.push_back({0, p + 1, 1});
  for (int k = 2; k <= q; k++) b.edges.push_back({p + k - 1, p + k, k});
  b.labels = {"w0"};
  for (int k = 1; k <= q; k++) b.labels.push_back("w" + std::to_string(k));
  return b;
}

// Blocks A (n1), B (n2), C (n3); all edges except those between A and C.
Build build_coupled_complete(int n1, int n2, int n3) {
  if (n1 < 1 || n2 < 1 || n3 < 1)
    throw invalid_argument("coupled_complete needs n1,n2,n3 >= 1");
  Build b;
  b.n = n1 + n2 + n3;
  auto block = [&](int lo, int hi, int g) {
    for (int i = lo; i < hi; i++)
      for (int j = i + 1; j < hi; j++) b.edges.push_back({i, j, g});
  };
  auto join = [&](int lo1, int hi1, int lo2, int hi2, int g) {
    for (int i = lo1; i < hi1; i++)
      for (int j = lo2; j < hi2; j++) b.edges.push_back({i, j, g});
  };
  block(0, n1, 0);
  join(0, n1, n1, n1 + n2, 1);
  block(n1, n1 + n2, 2);
  join(n1, n1 + n2, n1 + n2, b.n, 3);
  block(n1 + n2, b.n, 4);
  b.labels = {"w-2", "w-1", "w0", "w1", "w2"};
  return b;
}

Build build_spec(const FamilySpec& spec);

Build build_product(const std::vector<FamilySpec>& factors) {
  if (factors.size() < 2)
    throw invalid_argument("cartesian_product needs at least two factors");
  std::vector<Build> parts;
  for (const FamilySpec& f : factors) {
    parts.push_back(build_spec(f));
    collapse_empty_groups(parts.back());
  }
  bool all_single = true;
  for (const Build& part : parts) all_single &= part.labels.size() == 1;
  Build out = parts[0];
  WeightedGraph acc(out.n, out.edges);
  for (size_t i = 1; i < parts.size(); i++) {
    acc = cartesian_product(acc, WeightedGraph(parts[i].n, parts[i].edges));
    out.labels.insert(out.labels.end(), parts[i].labels.begin(),
                      parts[i].labels.end());
  }
  out.n = acc.n();
  out.edges = acc.edges();
  if (all_single) {
    out.labels.clear();
    for (size_t i = 0; i < parts.size(); i++)
      out.labels.push_back("w" + std::to_string(i + 1));
  } else {
    size_t at = 0;
    for (size_t i = 0; i < parts.size(); i++)
      for (size_t j = 0; j < parts[i].labels.size(); j++, at++)
        out.labels[at] = "f" + std::to_string(i + 1) + "." + out.labels[at];
  }
  return out;
}

Build build_spec(const FamilySpec& spec) {
  switch (spec.family) {
    case Family::path: return build_path(spec.n);
    case Family::cycle: return build_cycle(spec.n);
    case Family::star: return build_star(spec.n);
    case Family::complete: return build_complete(spec.n);
    case Family::paw: return build_lollipop(2, 1);
    case Family::lollipop: return build_lollipop(spec.p, spec.q);
    case Family::ccs_star: return build_ccs_star(spec.p, spec.q);
    case Family::ccs_star2: return build_ccs_star2(spec.p, spec.q1, spec.q2);
    case Family::symmetric_star: return build_symmetric_star(spec.p, spec.q);
    case Family::palm: return build_palm(spec.p, spec.q);
    case Family::prism: {
      if (spec.n1 < 2 || spec.n2 < 2)
        throw invalid_argument("prism needs n1,n2 >= 2");
      std::vector<FamilySpec> f(2);
      f[0].family = Family::complete;
      f[0].n = spec.n1;
      f[1].family = Family::complete;
      f[1].n = spec.n2;
      return build_product(f);
    }
    case Family::coupled_complete:
      return build_coupled_complete(spec.n1, spec.n2, spec.n3);
    case Family::cartesian_product: return build_product(spec.factors);
  }
  throw invalid_argument("unknown family");
}

struct Parser {
  const std::string& s;
  size_t pos = 0;

  void skip() {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) pos++;
  }
  bool eat(char c) {
    skip();
    if (pos < s.size() && s[pos] == c) {
      pos++;
      return true;
    }
    return false;
  }
  std::string ident() {
    skip();
    size_t start = pos;
    while (pos < s.size() &&
           (std::isalnum(static_cast<unsigned char>(s[pos])) || s[pos] == '_'))
      pos++;
    if (pos == start) throw invalid_argument("expected family name in '" + s + "'");
    return s.substr(start, pos - start);
  }
  int integer() {
    skip();
    size_t start = pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) pos++;
    if (pos == start) throw invalid_argument("expected integer in '" + s + "'");
    return std::stoi(s.substr(start, pos - start));
  }

  FamilySpec family() {
    std::string name = ident();
    FamilySpec spec;
    if (name == "cartesian_product") {
      spec.family = Family::cartesian_product;
      if (!eat('(')) throw invalid_argument("cartesian_product needs factors");
      do {
        spec.factors.push_back(family());
      } while (eat(','));
      if (!eat(')')) throw invalid_argument("unbalanced parentheses in '" + s + "'");
      return spec;
    }
    std::vector<int> args;
    if (eat('(')) {
      if (!eat(')')) {
        do {
          args.push_back(integer());
        } while (eat(','));
        if (!eat(')'))
          throw invalid_argument("unbalanced parentheses in '" + s + "'");
      }
    }
    auto want = [&](size_t k) {
      if (args.size() != k)
        throw invalid_argument(name + " takes " + std::to_string(k) +
                               " parameter(s)");
    };
    if (name == "path" || name == "cycle" || name == "star" || name == "complete") {
      want(1);
      spec.family = name == "path"    ? Family::path
                    : name == "cycle" ? Family::cycle
                    : name == "star"  ? Family::star
                                      : Family::complete;
      spec.n = args[0];
    } else if (name == "paw") {
      want(0);
      spec.family = Family::paw;
    } else if (name == "lollipop" || name == "ccs_star" ||
               name == "symmetric_star" || name == "palm") {
      want(2);
      spec.family = name == "lollipop"   ? Family::lollipop
                    : name == "ccs_star" ? Family::ccs_star
                    : name == "symmetric_star" ? Family::symmetric_star
                                               : Family::palm;
      spec.p = args[0];
      spec.q = args[1];
    } else if (name == "ccs_star2") {
      want(3);
      spec.family = Family::ccs_star2;
      spec.p = args[0];
      spec.q1 = args[1];
      spec.q2 = args[2];
    } else if (name == "prism") {
      want(2);
      spec.family = Family::prism;
      spec.n1 = args[0];
      spec.n2 = args[1];
    } else if (name == "coupled_complete") {
      want(3);
      spec.family = Family::coupled_complete;
      spec.n1 = args[0];
      spec.n2 = args[1];
      spec.n3 = args[2];
    } else {
      throw invalid_argument("unknown family '" + name + "'");
    }
    return spec;
  }
};

}  // namespace

FamilySpec parse_family(const std::string& text) {
  Parser p{text};
  FamilySpec spec = p.family();
  p.skip();
  if (p.pos != text.size())
    throw invalid_argument("trailing input in '" + text + "'");
  return spec;
}

std::string family_to_string(const FamilySpec& spec) {
  std::ostringstream out;
  auto args = [&](std::initializer_list<int> xs) {
    out << '(';
    bool first = true;
    for (int x : xs) {
      if (!first) out << ',';
      first = false;
      out << x;
    }
    out << ')';
  };
  switch (spec.family) {
    case Family::path: out << "path"; args({spec.n}); break;
    case Family::cycle: out << "cycle"; args({spec.n}); break;
    case Family::star: out << "star"; args({spec.n}); break;
    case Family::complete: out << "complete"; args({spec.n}); break;
    case Family::paw: out << "paw"; break;
    case Family::lollipop: out << "lollipop"; args({spec.p, spec.q}); break;
    case Family::ccs_star: out << "ccs_star"; args({spec.p, spec.q}); break;
    case Family::ccs_star2:
      out << "ccs_star2";
      args({spec.p, spec.q1, spec.q2});
      break;
    case Family::symmetric_star:
      out << "symmetric_star";
      args({spec.p, spec.q});
      break;
    case Family::palm: out << "palm"; args({spec.p, spec.q}); break;
    case Family::prism: out << "prism"; args({spec.n1, spec.n2}); break;
    case Family::coupled_complete:
      out << "coupled_complete";
      args({spec.n1, spec.n2, spec.n3});
      break;
    case Family::cartesian_product: {
      out << "cartesian_product(";
      for (size_t i = 0; i < spec.factors.size(); i++) {
        if (i) out << ',';
        out << family_to_string(spec.factors[i]);
      }
      out << ')';
      break;
    }
  }
  return out.str();
}

WeightedGraph build_family(const FamilySpec& spec) {
  Build b = build_spec(spec);
  collapse_empty_groups(b);
  return WeightedGraph(b.n, std::move(b.edges));
}

std::vector<std::string> family_group_labels(const FamilySpec& spec) {
  Build b = build_spec(spec);
  collapse_empty_groups(b);
  return b.labels;
}

}  // namespace qcon
