// Command-line front end: optimize weights, inspect spectra, verify spectral
// claims against brute-force checks, run the density-matrix simulator, and
// emit the reference tables as CSV.
//
// Exit codes: 0 success, 1 usage/domain error, 2 solver non-convergence,
// 3 verification failure.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "qcon/json_io.hpp"
#include "qcon/optimizer.hpp"
#include "qcon/partitions.hpp"
#include "qcon/quantum.hpp"
#include "qcon/scheme.hpp"
#include "qcon/schreier.hpp"
#include "qcon/spectra.hpp"

using nlohmann::json;
using namespace qcon;

namespace {

std::string fmt12(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

struct GraphInput {
  WeightedGraph graph;
  std::vector<std::string> labels;
  std::optional<FamilySpec> spec;
};

struct FamilyFlags {
  std::string topology;
  int n = 0, p = 0, q = 0, q1 = 0, q2 = 0, n1 = 0, n2 = 0, n3 = 0;
  std::string factors;
  std::string graph_file;

  void add_to(CLI::App* cmd, bool with_file = true) {
    cmd->add_option("--topology", topology,
                    "family name (flags below) or full form like palm(4,2)");
    cmd->add_option("--n,--N", n, "order for path/cycle/star/complete");
    cmd->add_option("--p", p);
    cmd->add_option("--q", q);
    cmd->add_option("--q1", q1);
    cmd->add_option("--q2", q2);
    cmd->add_option("--n1", n1);
    cmd->add_option("--n2", n2);
    cmd->add_option("--n3", n3);
    cmd->add_option("--factors", factors,
                    "cartesian_product factors, e.g. complete(3),complete(2)");
    if (with_file)
      cmd->add_option("--graph-file", graph_file,
                      "graph JSON {\"n\":..,\"edges\":[[i,j,group],..]}");
  }

  FamilySpec to_spec() const {
    if (topology.find('(') != std::string::npos) return parse_family(topology);
    if (topology == "paw") return parse_family("paw");
    if (topology == "cartesian_product") {
      if (factors.empty())
        throw invalid_argument("cartesian_product needs --factors");
      return parse_family("cartesian_product(" + factors + ")");
    }
    std::ostringstream text;
    text << topology << '(';
    if (topology == "path" || topology == "cycle" || topology == "star" ||
        topology == "complete")
      text << n;
    else if (topology == "lollipop" || topology == "ccs_star" ||
             topology == "symmetric_star" || topology == "palm")
      text << p << ',' << q;
    else if (topology == "ccs_star2")
      text << p << ',' << q1 << ',' << q2;
    else if (topology == "prism")
      text << n1 << ',' << n2;
    else if (topology == "coupled_complete")
      text << n1 << ',' << n2 << ',' << n3;
    else
      throw invalid_argument("unknown topology '" + topology + "'");
    text << ')';
    return parse_family(text.str());
  }

  GraphInput resolve() const {
    if (!graph_file.empty()) {
      if (!topology.empty())
        throw invalid_argument("give either --topology or --graph-file");
      WeightedGraph g = load_graph_file(graph_file);
      std::vector<std::string> labels;
      for (int i = 0; i < g.num_groups(); i++)
        labels.push_back("w" + std::to_string(i));
      return {std::move(g), std::move(labels), std::nullopt};
    }
    if (topology.empty())
      throw invalid_argument("need --topology or --graph-file");
    FamilySpec spec = to_spec();
    return {build_family(spec), family_group_labels(spec), spec};
  }
};

Regime parse_regime(const std::string& text, int N, int d) {
  if (text.empty() || text == "auto") return regime_of(N, d);
  if (text == "le" || text == "at_most_d_squared") return Regime::AtMostDSquared;
  if (text == "eq" || text == "d_squared_plus_one") return Regime::DSquaredPlusOne;
  if (text == "general") return Regime::General;
  if (text == "classical") return Regime::Classical;
  throw invalid_argument("unknown regime '" + text + "'");
}

std::vector<double> parse_weights(const std::string& text) {
  std::vector<double> w;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    size_t used = 0;
    w.push_back(std::stod(item, &used));
    if (used != item.size())
      throw invalid_argument("bad weight entry '" + item + "'");
  }
  return w;
}

Partition parse_partition(const std::string& text) {
  std::vector<int> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) parts.push_back(std::stoi(item));
  return Partition(parts);
}

// Deterministic connected test graph: random spanning tree plus coin-flip
// extra edges, one weight group per edge.
WeightedGraph random_connected_graph(int N, std::mt19937_64& rng) {
  std::vector<Edge> edges;
  std::vector<std::pair<int, int>> present;
  for (int v = 1; v < N; v++) {
    int parent = static_cast<int>(rng() % v);
    present.push_back({parent, v});
  }
  for (int i = 0; i < N; i++)
    for (int j = i + 1; j < N; j++) {
      bool in_tree = false;
      for (auto& [a, b] : present)
        in_tree |= (a == i && b == j) || (a == j && b == i);
      if (!in_tree && rng() % 2 == 0) present.push_back({i, j});
    }
  int g = 0;
  for (auto& [a, b] : present) edges.push_back({a, b, g++});
  return WeightedGraph(N, std::move(edges));
}

WeightVector random_weights(int groups, std::mt19937_64& rng) {
  WeightVector w(groups);
  for (double& x : w) x = 0.1 + static_cast<double>(rng() >> 11) * 0x1.0p-53;
  return w;
}

int cmd_optimize(const FamilyFlags& flags, int d, const std::string& regime_text,
                 const std::string& method, const SolveOptions& opts) {
  GraphInput in = flags.resolve();
  int N = in.graph.n();
  Regime regime = parse_regime(regime_text, N, d);
  if (method == "closed") {
    if (!in.spec) throw invalid_argument("--method closed needs --topology");
    std::cout << result_to_json(closed_form(*in.spec, regime), in.labels).dump(2)
              << "\n";
    return 0;
  }
  if (method == "generic") {
    OptimizationResult r =
        regime == Regime::Classical
            ? solve_classical(in.graph, opts)
            : solve_regime(in.graph, regime, N, d, opts);
    std::cout << result_to_json(r, in.labels).dump(2) << "\n";
    return r.converged ? 0 : 2;
  }
  if (method == "both") {
    if (!in.spec) throw invalid_argument("--method both needs --topology");
    CrossValidation cv = cross_validate(*in.spec, regime, opts);
    std::cout << cross_validation_to_json(cv, in.labels).dump(2) << "\n";
    return cv.solved.converged ? 0 : 2;
  }
  throw invalid_argument("--method must be closed, generic, or both");
}

int cmd_spectrum(const FamilyFlags& flags, const std::string& weights_text,
                 const std::string& partition_text) {
  GraphInput in = flags.resolve();
  WeightVector w(in.graph.num_groups(), 1.0);
  if (!weights_text.empty()) w = parse_weights(weights_text);
  json out;
  out["n"] = in.graph.n();
  Matrix L = partition_text.empty()
                 ? in.graph.laplacian(w)
                 : induced_laplacian(in.graph, parse_partition(partition_text), w);
  if (!partition_text.empty())
    out["partition"] = parse_partition(partition_text).parts();
  Spectrum sp = sym_eigenvalues(L);
  json values = json::array();
  for (double v : sp.values) values.push_back(round12(v));
  out["spectrum"] = values;
  out["lambda2"] = round12(sp.values.size() > 1 ? sp.values[1] : 0.0);
  out["lambda_max"] = round12(sp.values.back());
  std::cout << out.dump(2) << "\n";
  return 0;
}

int cmd_verify(const std::string& claim, int N, int trials, std::uint64_t seed) {
  double tol = 1e-8;
  json deviations = json::array();
  double max_dev = 0;
  auto note = [&](double dev) {
    deviations.push_back(round12(dev));
    max_dev = std::max(max_dev, dev);
  };

  if (claim == "aldous") {
    if (N < 2 || N > 8) throw resource_error("aldous claim guarded to N in 2..8");
    std::vector<Partition> partitions = enumerate_partitions(N);
    for (int t = 0; t < trials; t++) {
      std::mt19937_64 rng(seed + t);
      WeightedGraph g = random_connected_graph(N, rng);
      WeightVector w = random_weights(g.num_groups(), rng);
      double base_l2 = sym_eigenvalues(g.laplacian(w)).values[1];
      double dev = 0;
      for (const Partition& p : partitions) {
        if (p.num_parts() == 1) continue;
        InducedGraph ig = induced_graph(g, p);
        double l2 = ig.graph.n() <= 256
                        ? sym_eigenvalues(induced_laplacian(g, p, w)).values[1]
                        : lambda2_lanczos(ig.graph, w);
        dev = std::max(dev, std::fabs(l2 - base_l2));
      }
      note(dev);
    }
  } else if (claim == "containment") {
    if (N < 2 || N > 7) throw resource_error("containment claim guarded to N in 2..7");
    auto covers = hasse_covers(N);
    for (int t = 0; t < trials; t++) {
      std::mt19937_64 rng(seed + t);
      WeightedGraph g = random_connected_graph(N, rng);
      WeightVector w = random_weights(g.num_groups(), rng);
      double dev = 0;
      for (const auto& [upper, lower] : covers) {
        Spectrum big = sym_eigenvalues(induced_laplacian(g, lower, w));
        Spectrum small = sym_eigenvalues(induced_laplacian(g, upper, w));
        if (!spectrum_contains(big, small, tol)) dev = std::max(dev, 1.0);
      }
      note(dev);
    }
  } else if (claim == "bipartite") {
    if (N < 2 || N > 7) throw resource_error("bipartite claim guarded to N in 2..7");
    std::vector<int> ones(N, 1);
    Partition regular(ones);
    for (int t = 0; t < trials; t++) {
      std::mt19937_64 rng(seed + t);
      WeightedGraph g = random_connected_graph(N, rng);
      WeightVector w = random_weights(g.num_groups(), rng);
      InducedGraph ig = induced_graph(g, regular);
      Matrix A(ig.graph.n());
      for (const Edge& e : ig.graph.edges()) {
        A(e.i, e.j) += w[e.group];
        A(e.j, e.i) += w[e.group];
      }
      Spectrum adj = sym_eigenvalues(A);
      double dev = 0;
      int nu = adj.size();
      for (int i = 0; i < nu; i++)
        dev = std::max(dev, std::fabs(adj.values[i] + adj.values[nu - 1 - i]));
      Matrix L = induced_laplacian(g, regular, w);
      dev = std::max(dev, std::fabs(sym_eigenvalues(L).values.back() -
                                    2.0 * g.total_weight(w)));
      note(dev);
    }
  } else if (claim == "scheme") {
    if (N < 2 || N > 7) throw resource_error("scheme claim guarded to N in 2..7");
    FamilySpec ks;
    ks.family = Family::complete;
    ks.n = N;
    WeightedGraph g = build_family(ks);
    for (int t = 0; t < trials; t++) {
      std::mt19937_64 rng(seed + t);
      WeightVector w = random_weights(1, rng);
      double dev = 0;
      for (const Partition& p : enumerate_partitions(N)) {
        Spectrum predicted = complete_induced_spectrum(N, p, w[0]);
        Spectrum got = sym_eigenvalues(induced_laplacian(g, p, w));
        // Computed and predicted eigenvalue sets must coincide.
        for (double v : got.values) {
          double best = 1e300;
          for (double pv : predicted.values) best = std::min(best, std::fabs(v - pv));
          dev = std::max(dev, best);
        }
        for (double pv : predicted.values) {
          double best = 1e300;
          for (double v : got.values) best = std::min(best, std::fabs(v - pv));
          dev = std::max(dev, best);
        }
      }
      note(dev);
    }
  } else if (claim == "duality") {
    if (N < 2 || N > 20) throw invalid_argument("duality claim needs N in 2..20");
    double dev = 0;
    for (const Partition& p : enumerate_partitions(N)) {
      std::int64_t lhs = transposition_eigenvalue(p.conjugate());
      std::int64_t rhs = -transposition_eigenvalue(p);
      dev = std::max(dev, static_cast<double>(std::llabs(lhs - rhs)));
    }
    note(dev);
    tol = 0;  // integer identity, exact
  } else {
    throw invalid_argument(
        "claim must be aldous, containment, bipartite, scheme, or duality");
  }

  bool pass = max_dev <= tol;
  json out{{"claim", claim},         {"N", N},       {"trials", deviations.size()},
           {"seed", seed},           {"tolerance", tol},
           {"deviations", deviations}, {"max_deviation", round12(max_dev)},
           {"pass", pass}};
  std::cout << out.dump(2) << "\n";
  return pass ? 0 : 3;
}

int cmd_simulate(const FamilyFlags& flags, int d, const std::string& weights_arg,
                 int steps, std::uint64_t seed, const std::string& out_path,
                 bool unsafe, const SolveOptions& opts) {
  GraphInput in = flags.resolve();
  int N = in.graph.n();
  WeightVector w;
  double slem_predicted;
  if (weights_arg == "auto") {
    OptimizationResult r = solve_generic(in.graph, N, d, opts);
    if (!r.converged) return 2;
    w = r.weights;
    slem_predicted = r.slem;
  } else {
    std::ifstream f(weights_arg);
    if (!f) throw invalid_argument("cannot open weights file: " + weights_arg);
    json jw;
    try {
      f >> jw;
    } catch (const json::exception& e) {
      throw invalid_argument(std::string("invalid weights JSON: ") + e.what());
    }
    w = jw.get<std::vector<double>>();
    slem_predicted = objective(in.graph, w, N, d).slem;
  }
  DensityMatrix rho0 = random_density_matrix(d, N, seed);
  Trajectory tr = simulate(rho0, in.graph, w, steps, unsafe);
  std::ofstream csv(out_path);
  if (!csv) throw invalid_argument("cannot write trajectory file: " + out_path);
  csv << "t,distance\n";
  for (size_t t = 0; t < tr.distances.size(); t++)
    csv << t << ',' << fmt12(tr.distances[t]) << "\n";
  json weights_obj = json::object();
  for (size_t g = 0; g < w.size(); g++) weights_obj[in.labels[g]] = round12(w[g]);
  json summary{{"seed", seed},
               {"steps", steps},
               {"distance0", round12(tr.distances.front())},
               {"weights", weights_obj},
               {"trajectory", out_path}};
  if (steps > 0) {
    summary["rate_estimate"] = round12(tr.rate_estimate);
    summary["slem_predicted"] = round12(slem_predicted);
    summary["pass"] =
        std::fabs(tr.rate_estimate - slem_predicted) <= 0.02 * slem_predicted;
  }
  std::cout << summary.dump(2) << "\n";
  return 0;
}

int cmd_tables(const std::string& which, bool check, int n_max, int n,
               const SolveOptions& opts) {
  std::ostream& os = std::cout;
  auto family_rows = [&](const std::vector<std::string>& names, Regime regime,
                         bool verdicts) {
    os << "topology,slem,weights";
    if (verdicts) os << ",verdict";
    if (check) os << ",oracle_dslem";
    os << "\n";
    for (const std::string& name : names) {
      FamilySpec spec = parse_family(name);
      OptimizationResult cf = closed_form(spec, regime);
      std::vector<std::string> labels = family_group_labels(spec);
      // The two rows whose published values conflict across sources carry
      // an oracle verdict; the solver is the arbiter.
      double printed = -1;
      if (verdicts && name == "paw") printed = (6.0 + std::sqrt(3.0)) / 11.0;
      if (verdicts && name == "coupled_complete(1,2,1)") printed = 3.0 / 5.0;
      std::optional<OptimizationResult> solved;
      if (check || printed >= 0) {
        WeightedGraph g = build_family(spec);
        solved = solve_regime(g, regime, g.n(), 0, opts);
      }
      os << name << ',' << fmt12(cf.slem) << ',';
      for (size_t g = 0; g < cf.weights.size(); g++) {
        if (g) os << ';';
        os << labels[g] << '=' << fmt12(cf.weights[g]);
      }
      if (verdicts) {
        std::string verdict;
        if (printed >= 0) {
          bool m_closed = std::fabs(solved->slem - cf.slem) <= 1e-4;
          bool m_printed = std::fabs(solved->slem - printed) <= 1e-4;
          verdict = m_closed && m_printed ? "oracle=closed=printed"
                    : m_closed           ? "oracle=closed"
                    : m_printed          ? "oracle=printed"
                                         : "oracle=neither";
        }
        os << ',' << verdict;
      }
      if (check) os << ',' << fmt12(std::fabs(solved->slem - cf.slem));
      os << "\n";
    }
    return 0;
  };

  if (which == "n4") {
    return family_rows({"path(4)", "star(4)", "cycle(4)", "complete(4)", "paw",
                        "coupled_complete(1,2,1)"},
                       Regime::AtMostDSquared, true);
  }
  if (which == "sdp-le" || which == "sdp-eq") {
    Regime regime = which == "sdp-le" ? Regime::AtMostDSquared
                                      : Regime::DSquaredPlusOne;
    return family_rows(
        {"ccs_star(3,2)", "ccs_star2(5,1,2)", "symmetric_star(5,2)", "palm(4,2)",
         "palm(2,2)", "lollipop(4,2)", "coupled_complete(1,3,1)",
         "coupled_complete(2,3,2)"},
        regime, false);
  }
  if (which == "lp") {
    os << "topology,regime1_w,regime1_slem,regime2_w,regime2_slem\n";
    std::vector<std::string> names = {
        "complete(" + std::to_string(n) + ")", "cycle(" + std::to_string(n) + ")",
        "star(" + std::to_string(n) + ")", "prism(3,2)"};
    for (const std::string& name : names) {
      FamilySpec spec = parse_family(name);
      OptimizationResult r1 = closed_form(spec, Regime::AtMostDSquared);
      OptimizationResult r2 = closed_form(spec, Regime::DSquaredPlusOne);
      os << name << ',' << fmt12(r1.weights[0]) << ',' << fmt12(r1.slem) << ','
         << fmt12(r2.weights[0]) << ',' << fmt12(r2.slem) << "\n";
    }
    return 0;
  }
  if (which == "qubit-complete") {
    os << "N,w,slem,argmin";
    if (check) os << ",delta_vs_search";
    os << "\n";
    for (int N = 4; N <= n_max; N++) {
      CompleteOptimum c = qubit_category_optimum(N);
      os << N << ',' << fmt12(c.w) << ',' << fmt12(c.slem) << ','
         << c.argmin.to_string();
      if (check) {
        CompleteOptimum ref = complete_graph_optimum(N, 2);
        os << ',' << fmt12(std::max(std::fabs(ref.w - c.w),
                                    std::fabs(ref.slem - c.slem)));
      }
      os << "\n";
    }
    return 0;
  }
  throw invalid_argument(
      "--which must be n4, lp, sdp-le, sdp-eq, or qubit-complete");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"quantum consensus weight optimization toolkit"};
  app.require_subcommand(1);

  FamilyFlags opt_flags, spec_flags, sim_flags;
  int d = 2;
  std::string regime_text = "auto", method = "generic";
  SolveOptions opts;

  CLI::App* opt = app.add_subcommand("optimize", "optimal weights for a graph");
  opt_flags.add_to(opt);
  opt->add_option("--d", d, "local dimension")->capture_default_str();
  opt->add_option("--regime", regime_text,
                  "auto|le|eq|general|classical (le: N<=d^2, eq: N=d^2+1)");
  opt->add_option("--method", method, "closed|generic|both");
  opt->add_option("--tol", opts.tol)->capture_default_str();
  opt->add_option("--max-iters", opts.max_iters)->capture_default_str();
  opt->add_option("--seed", opts.seed)->capture_default_str();

  std::string weights_text, partition_text;
  CLI::App* spc = app.add_subcommand("spectrum", "Laplacian spectra, base or induced");
  spec_flags.add_to(spc);
  spc->add_option("--weights", weights_text, "comma-separated group weights (default all 1)");
  spc->add_option("--partition", partition_text, "induce on this partition, e.g. 2,1");

  std::string claim;
  int verify_N = 5, trials = 20;
  std::uint64_t seed = 12345;
  CLI::App* ver = app.add_subcommand("verify", "check spectral claims by brute force");
  ver->add_option("--claim", claim, "aldous|containment|bipartite|scheme|duality")
      ->required();
  ver->add_option("--n,--N", verify_N)->capture_default_str();
  ver->add_option("--d", d, "accepted for symmetry; claims are d-independent");
  ver->add_option("--trials", trials)->capture_default_str();
  ver->add_option("--seed", seed)->capture_default_str();

  std::string weights_arg = "auto", out_path = "trajectory.csv";
  int steps = 60;
  bool unsafe = false;
  CLI::App* sim = app.add_subcommand("simulate", "density-matrix trajectory");
  sim_flags.add_to(sim);
  sim->add_option("--d", d)->capture_default_str();
  sim->add_option("--weights", weights_arg, "auto or a JSON file with a weight array")
      ->capture_default_str();
  sim->add_option("--steps", steps)->capture_default_str();
  sim->add_option("--seed", seed)->capture_default_str();
  sim->add_option("--out", out_path, "trajectory CSV path")->capture_default_str();
  sim->add_flag("--unsafe", unsafe, "run weights that violate complete positivity");
  sim->add_option("--tol", opts.tol)->capture_default_str();
  sim->add_option("--max-iters", opts.max_iters)->capture_default_str();

  std::string which;
  bool check = false;
  int n_max = 16, lp_n = 5;
  CLI::App* tab = app.add_subcommand("tables", "reference tables as CSV");
  tab->add_option("--which", which, "n4|lp|sdp-le|sdp-eq|qubit-complete")->required();
  tab->add_flag("--check", check, "add a solver-delta column");
  tab->add_option("--n-max", n_max)->capture_default_str();
  tab->add_option("--n,--N", lp_n, "order for the lp table rows")->capture_default_str();

  int comp_N = 4;
  CLI::App* comp = app.add_subcommand("complete", "uniform-weight optimum on K_N");
  comp->add_option("--n,--N", comp_N)->required();
  comp->add_option("--d", d)->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (app.got_subcommand(opt))
      return cmd_optimize(opt_flags, d, regime_text, method, opts);
    if (app.got_subcommand(spc))
      return cmd_spectrum(spec_flags, weights_text, partition_text);
    if (app.got_subcommand(ver)) return cmd_verify(claim, verify_N, trials, seed);
    if (app.got_subcommand(sim))
      return cmd_simulate(sim_flags, d, weights_arg, steps, seed, out_path, unsafe,
                          opts);
    if (app.got_subcommand(tab)) return cmd_tables(which, check, n_max, lp_n, opts);
    if (app.got_subcommand(comp)) {
      std::cout << complete_optimum_to_json(complete_graph_optimum(comp_N, d)).dump(2)
                << "\n";
      return 0;
    }
  } catch (const invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
