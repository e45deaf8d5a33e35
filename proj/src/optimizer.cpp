#include "qcon/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <numeric>
#include <vector>

#include "qcon/errors.hpp"
#include "qcon/schreier.hpp"
#include "qcon/spectra.hpp"

namespace qcon {

const char* regime_name(Regime r) {
  switch (r) {
    case Regime::AtMostDSquared: return "at_most_d_squared";
    case Regime::DSquaredPlusOne: return "d_squared_plus_one";
    case Regime::General: return "general";
    case Regime::Classical: return "classical";
  }
  return "unknown";
}

Regime regime_of(int N, int d) {
  if (N < 2) throw invalid_argument("need at least two vertices");
  if (d < 2) throw invalid_argument("local dimension must be >= 2");
  if (N <= d * d) return Regime::AtMostDSquared;
  if (N == d * d + 1) return Regime::DSquaredPlusOne;
  return Regime::General;
}

Partition least_dominant_feasible(int N, int d) {
  if (N < 1) throw invalid_argument("N must be positive");
  if (d < 2) throw invalid_argument("local dimension must be >= 2");
  int k = std::min(N, d * d);
  std::vector<int> parts(k, N / k);
  for (int i = 0; i < N % k; i++) parts[i]++;
  return Partition(parts);
}

namespace {

struct EigenSystem {
  std::vector<double> values;                // ascending
  std::vector<std::vector<double>> vectors;  // vectors[k] pairs with values[k]
};

// Cyclic Jacobi with eigenvector accumulation; used on base-sized matrices
// where the solver needs subgradient directions, not just values.
EigenSystem eigen_full(const Matrix& M) {
  int n = M.n();
  Matrix A = M;
  Matrix V(n);
  for (int i = 0; i < n; i++) V(i, i) = 1.0;
  double fro = 0;
  for (int i = 0; i < n; i++)
    for (int j = 0; j < n; j++) fro += A(i, j) * A(i, j);
  double stop = 1e-14 * std::max(1.0, std::sqrt(fro));
  for (int sweep = 0; sweep < 100; sweep++) {
    double off = 0;
    for (int i = 0; i < n; i++)
      for (int j = i + 1; j < n; j++) off += 2.0 * A(i, j) * A(i, j);
    if (std::sqrt(off) <= stop) break;
    if (sweep == 99) throw degenerate_input("eigensolver failed to converge");
    for (int p = 0; p < n; p++)
      for (int q = p + 1; q < n; q++) {
        double apq = A(p, q);
        if (apq == 0.0) continue;
        double theta = (A(q, q) - A(p, p)) / (2.0 * apq);
        double t = (theta >= 0 ? 1.0 : -1.0) /
                   (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
        double c = 1.0 / std::sqrt(t * t + 1.0), s = t * c;
        for (int k = 0; k < n; k++) {
          double akp = A(k, p), akq = A(k, q);
          A(k, p) = c * akp - s * akq;
          A(k, q) = s * akp + c * akq;
        }
        for (int k = 0; k < n; k++) {
          double apk = A(p, k), aqk = A(q, k);
          A(p, k) = c * apk - s * aqk;
          A(q, k) = s * apk + c * aqk;
        }
        A(p, q) = A(q, p) = 0.0;
        for (int k = 0; k < n; k++) {
          double vkp = V(k, p), vkq = V(k, q);
          V(k, p) = c * vkp - s * vkq;
          V(k, q) = s * vkp + c * vkq;
        }
      }
  }
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](int a, int b) { return A(a, a) < A(b, b); });
  EigenSystem es;
  es.values.resize(n);
  es.vectors.assign(n, std::vector<double>(n));
  for (int k = 0; k < n; k++) {
    es.values[k] = A(order[k], order[k]);
    for (int i = 0; i < n; i++) es.vectors[k][i] = V(i, order[k]);
  }
  return es;
}

std::vector<double> group_energies(const WeightedGraph& g,
                                   const std::vector<double>& v) {
  std::vector<double> e(g.num_groups(), 0.0);
  for (const Edge& ed : g.edges()) {
    double d = v[ed.i] - v[ed.j];
    e[ed.group] += d * d;
  }
  return e;
}

// Average the per-group energies over a (near-)degenerate eigenvalue cluster
// so the subgradient respects the symmetry of the eigenspace.
std::vector<double> cluster_energies(const WeightedGraph& g, const EigenSystem& es,
                                     int first, int last) {
  std::vector<double> acc(g.num_groups(), 0.0);
  for (int k = first; k <= last; k++) {
    std::vector<double> e = group_energies(g, es.vectors[k]);
    for (size_t i = 0; i < acc.size(); i++) acc[i] += e[i];
  }
  for (double& a : acc) a /= (last - first + 1);
  return acc;
}

constexpr double kClusterTol = 1e-7;

// lambda_max of the induced Laplacian by shifted power iteration on the
// induced edge list, warm-started across solver iterations.
struct InducedPower {
  const WeightedGraph* graph = nullptr;
  std::vector<double> v;

  double lambda(const WeightVector& w, std::vector<double>* energies,
                double tol, int max_steps) {
    const WeightedGraph& g = *graph;
    int n = g.n();
    double shift = 0;
    for (int gr = 0; gr < g.num_groups(); gr++)
      shift += 2.0 * g.group_size(gr) * std::fabs(w[gr]);
    shift = std::max(shift, 1e-8);
    if (v.empty()) {
      v.resize(n);
      for (int i = 0; i < n; i++) v[i] = std::sin(1.0 + i);
    }
    std::vector<double> y(n);
    auto center_normalize = [&](std::vector<double>& x) {
      for (int attempt = 0; attempt < 2; attempt++) {
        double mean = 0;
        for (double xi : x) mean += xi;
        mean /= n;
        double norm = 0;
        for (double& xi : x) {
          xi -= mean;
          norm += xi * xi;
        }
        norm = std::sqrt(norm);
        if (norm >= 1e-30) {
          for (double& xi : x) xi /= norm;
          return;
        }
        for (int i = 0; i < n; i++) x[i] = std::sin(2.0 + i);
      }
    };
    center_normalize(v);
    double lam = 0, prev = 1e300;
    for (int step = 0; step < max_steps; step++) {
      for (int i = 0; i < n; i++) y[i] = shift * v[i];
      for (const Edge& e : g.edges()) {
        double we = w[e.group];
        double d = v[e.i] - v[e.j];
        y[e.i] += we * d;
        y[e.j] -= we * d;
      }
      double ray = 0;
      for (int i = 0; i < n; i++) ray += v[i] * y[i];
      lam = ray - shift;
      v = y;
      center_normalize(v);
      if (std::fabs(lam - prev) <= tol * std::max(1.0, shift)) break;
      prev = lam;
    }
    if (energies) *energies = group_energies(g, v);
    return lam;
  }
};

struct Evaluation {
  double f = 0;
  double lambda2 = 0;
  double lam_term = 0;
  std::vector<double> sub;
};

struct Evaluator {
  const WeightedGraph& base;
  Regime regime;
  std::unique_ptr<InducedGraph> induced;
  InducedPower power;

  Evaluator(const WeightedGraph& b, Regime r, int N, int d) : base(b), regime(r) {
    if (regime == Regime::General) {
      induced = std::make_unique<InducedGraph>(
          induced_graph(base, least_dominant_feasible(N, d)));
      power.graph = &induced->graph;
    }
  }

  Evaluation eval(const WeightVector& w) {
    if (regime == Regime::Classical) return eval_classical(w);
    Evaluation out;
    EigenSystem es = eigen_full(base.laplacian(w));
    int n = base.n();
    out.lambda2 = es.values[1];
    int last2 = 1;
    while (last2 + 1 < n && es.values[last2 + 1] - es.values[1] <= kClusterTol)
      last2++;
    std::vector<double> e2 = cluster_energies(base, es, 1, last2);
    double W = base.total_weight(w);

    double val1 = 1.0 - out.lambda2;
    double val2 = 0;
    std::vector<double> grad2(base.num_groups(), 0.0);
    switch (regime) {
      case Regime::AtMostDSquared:
        out.lam_term = 2.0 * W;
        for (int g = 0; g < base.num_groups(); g++)
          grad2[g] = 2.0 * base.group_size(g);
        break;
      case Regime::DSquaredPlusOne:
        out.lam_term = 2.0 * W - out.lambda2;
        for (int g = 0; g < base.num_groups(); g++)
          grad2[g] = 2.0 * base.group_size(g) - e2[g];
        break;
      case Regime::General:
        out.lam_term = power.lambda(w, &grad2, 1e-11, 500);
        break;
      case Regime::Classical: break;  // handled above
    }
    val2 = out.lam_term - 1.0;

    out.f = std::max(val1, val2);
    out.sub.assign(base.num_groups(), 0.0);
    if (std::fabs(val1 - val2) <= 1e-12) {
      for (int g = 0; g < base.num_groups(); g++)
        out.sub[g] = 0.5 * (-e2[g] + grad2[g]);
    } else if (val1 > val2) {
      for (int g = 0; g < base.num_groups(); g++) out.sub[g] = -e2[g];
    } else {
      out.sub = grad2;
    }
    return out;
  }

  // Classical consensus admits negative weights, so the Laplacian may be
  // indefinite and the constant eigenvector's zero eigenvalue need not sit at
  // index 1. Shift the constant eigenvector to the mean of the remaining
  // eigenvalues; the sorted endpoints are then the extremes over its
  // complement.
  Evaluation eval_classical(const WeightVector& w) {
    Evaluation out;
    int n = base.n();
    Matrix L = base.laplacian(w);
    double c = 2.0 * base.total_weight(w) / (n - 1);
    for (int i = 0; i < n; i++)
      for (int j = 0; j < n; j++) L(i, j) += c / n;
    EigenSystem es = eigen_full(L);
    out.lambda2 = es.values[0];
    int last = 0;
    while (last + 1 < n && es.values[last + 1] - es.values[0] <= kClusterTol)
      last++;
    std::vector<double> e_lo = cluster_energies(base, es, 0, last);
    out.lam_term = es.values[n - 1];
    int first = n - 1;
    while (first - 1 >= 0 &&
           es.values[n - 1] - es.values[first - 1] <= kClusterTol)
      first--;
    std::vector<double> e_hi = cluster_energies(base, es, first, n - 1);

    double val1 = 1.0 - out.lambda2;
    double val2 = out.lam_term - 1.0;
    out.f = std::max(val1, val2);
    out.sub.assign(base.num_groups(), 0.0);
    if (std::fabs(val1 - val2) <= 1e-12) {
      for (int g = 0; g < base.num_groups(); g++)
        out.sub[g] = 0.5 * (-e_lo[g] + e_hi[g]);
    } else if (val1 > val2) {
      for (int g = 0; g < base.num_groups(); g++) out.sub[g] = -e_lo[g];
    } else {
      out.sub = e_hi;
    }
    return out;
  }
};

OptimizationResult run_solver(const WeightedGraph& base, Regime regime, int N,
                              int d, const SolveOptions& opts) {
  if (base.n() < 2) throw invalid_argument("need at least two vertices");
  if (base.num_edges() < 1) throw degenerate_input("graph has no edges");
  if (!base.is_connected())
    throw degenerate_input("optimization needs a connected base graph");
  int G = base.num_groups();
  std::vector<double> m(G);
  for (int g = 0; g < G; g++) m[g] = base.group_size(g);
  double mm = 0;
  for (double mg : m) mm += mg * mg;

  Evaluator ev(base, regime, N, d);

  // Quantum weights are mixing probabilities of a unitary channel, so the
  // quantum regimes optimize over the nonnegative orthant (the balanced
  // regime intersects it with the slice W = 1); classical weights may go
  // negative.
  auto project = [&](WeightVector& x) {
    if (regime == Regime::Classical) return;
    if (regime != Regime::DSquaredPlusOne) {
      for (double& v : x) v = std::max(v, 0.0);
      return;
    }
    // Euclidean projection onto {w >= 0, sum_g m_g w_g = 1}: the projection
    // is w_g = max(0, x_g - theta m_g) with theta fixed by bisection on the
    // total weight.
    double W = 0;
    for (int g = 0; g < G; g++) W += m[g] * x[g];
    double lo = (W - 1.0) / mm;
    double hi = x[0] / m[0];
    for (int g = 1; g < G; g++) hi = std::max(hi, x[g] / m[g]);
    for (int it = 0; it < 100; it++) {
      double mid = 0.5 * (lo + hi);
      double s = 0;
      for (int g = 0; g < G; g++)
        s += m[g] * std::max(0.0, x[g] - mid * m[g]);
      (s > 1.0 ? lo : hi) = mid;
    }
    double theta = 0.5 * (lo + hi);
    for (int g = 0; g < G; g++) x[g] = std::max(0.0, x[g] - theta * m[g]);
  };

  WeightVector x(G, 1.0 / (2.0 * base.num_edges()));
  project(x);
  WeightVector x_best = x;
  double f_best = 1e300;

  double delta = 0;
  double delta_stop = std::max(opts.tol * 0.25, 1e-13);
  const int epoch = 200;
  int iters = 0;
  bool converged = false;
  while (iters < opts.max_iters && !converged) {
    double f_epoch = f_best;
    for (int k = 0; k < epoch && iters < opts.max_iters; k++) {
      Evaluation e = ev.eval(x);
      iters++;
      if (e.f < f_best) {
        f_best = e.f;
        x_best = x;
        if (delta == 0) delta = 0.25 * std::max(0.2, f_best);
      }
      double gnorm2 = 0;
      for (double s : e.sub) gnorm2 += s * s;
      if (gnorm2 < 1e-26) {
        converged = true;
        break;
      }
      double step = (e.f - (f_best - delta)) / gnorm2;
      for (int g = 0; g < G; g++) x[g] -= step * e.sub[g];
      project(x);
    }
    if (!converged) {
      // Halve the Polyak target gap only once progress at this level stalls.
      if (f_epoch - f_best <= 0.1 * delta) delta *= 0.5;
      if (delta < delta_stop) converged = true;
    }
  }

  // Accurate recompute at the best iterate.
  OptimizationResult out;
  out.weights = x_best;
  out.regime = regime;
  out.iterations = iters;
  out.converged = converged;
  if (regime == Regime::Classical) {
    int nn = base.n();
    Matrix L = base.laplacian(x_best);
    double c = 2.0 * base.total_weight(x_best) / (nn - 1);
    for (int i = 0; i < nn; i++)
      for (int j = 0; j < nn; j++) L(i, j) += c / nn;
    Spectrum sp = sym_eigenvalues(L);
    out.lambda2 = sp.values.front();
    out.lambda_max = sp.values.back();
  } else {
    Spectrum sp = sym_eigenvalues(base.laplacian(x_best));
    out.lambda2 = sp.values[1];
    double W = base.total_weight(x_best);
    switch (regime) {
      case Regime::AtMostDSquared: out.lambda_max = 2.0 * W; break;
      case Regime::DSquaredPlusOne:
        out.lambda_max = 2.0 * W - out.lambda2;
        break;
      case Regime::General: {
        Matrix Li =
            induced_laplacian(base, least_dominant_feasible(N, d), x_best);
        if (Li.n() <= 2048) {
          out.lambda_max = sym_eigenvalues(Li).values.back();
        } else {
          InducedPower p2;
          p2.graph = &ev.induced->graph;
          out.lambda_max = p2.lambda(x_best, nullptr, 1e-14, 20000);
        }
        break;
      }
      case Regime::Classical: break;  // handled above
    }
  }
  out.slem = std::max(1.0 - out.lambda2, out.lambda_max - 1.0);
  return out;
}

}  // namespace

Objective objective(const WeightedGraph& base, const WeightVector& w, int N,
                    int d) {
  if (N != base.n())
    throw invalid_argument("N must equal the number of base vertices");
  Regime regime = regime_of(N, d);
  Objective out;
  Spectrum sp = sym_eigenvalues(base.laplacian(w));
  out.lambda2 = sp.values[1];
  double W = base.total_weight(w);
  switch (regime) {
    case Regime::AtMostDSquared: out.lambda_max = 2.0 * W; break;
    case Regime::DSquaredPlusOne: out.lambda_max = 2.0 * W - out.lambda2; break;
    default:
      out.lambda_max =
          sym_eigenvalues(induced_laplacian(base, least_dominant_feasible(N, d), w))
              .values.back();
      break;
  }
  out.slem = std::max(1.0 - out.lambda2, out.lambda_max - 1.0);
  return out;
}

OptimizationResult solve_generic(const WeightedGraph& base, int N, int d,
                                 const SolveOptions& opts) {
  if (N != base.n())
    throw invalid_argument("N must equal the number of base vertices");
  return run_solver(base, regime_of(N, d), N, d, opts);
}

OptimizationResult solve_regime(const WeightedGraph& base, Regime regime, int N,
                                int d, const SolveOptions& opts) {
  if (N != base.n())
    throw invalid_argument("N must equal the number of base vertices");
  if (regime == Regime::General && d < 2)
    throw invalid_argument("general regime needs the local dimension");
  return run_solver(base, regime, N, d, opts);
}

OptimizationResult solve_classical(const WeightedGraph& base,
                                   const SolveOptions& opts) {
  return run_solver(base, Regime::Classical, base.n(), 0, opts);
}

namespace {

// Closed forms below use r2 for the balanced-total-weight regime (W = 1) and
// r1 for the regime whose optimum balances 1 - lambda2 = 2W - 1.

struct Closed {
  double slem = 0;
  WeightVector w;
};

bool is_r1(Regime r) {
  if (r == Regime::AtMostDSquared) return true;
  if (r == Regime::DSquaredPlusOne) return false;
  throw not_implemented("closed forms cover the two quantum regimes only");
}

Closed closed_complete(int n, Regime r) {
  double N = n;
  if (is_r1(r)) return {(N - 2) / N, {2.0 / (N * N)}};
  if (n < 3) throw not_implemented("no balanced-weight optimum for complete(2)");
  return {(N - 3) / (N - 1), {2.0 / (N * N - N)}};
}

Closed closed_cycle(int n, Regime r) {
  double N = n;
  double c = std::cos(2.0 * M_PI / N);
  if (is_r1(r)) return {(N - 1 + c) / (N + 1 - c), {1.0 / (N + 1 - c)}};
  return {1.0 - 2.0 * (1.0 - c) / N, {1.0 / N}};
}

Closed closed_star(int n, Regime r) {
  double N = n;
  if (is_r1(r)) return {(2 * N - 3) / (2 * N - 1), {2.0 / (2 * N - 1)}};
  return {(N - 2) / (N - 1), {1.0 / (N - 1)}};
}

Closed closed_symmetric_star(int p, int q, Regime r) {
  double D = static_cast<double>(p) * q * (q + 1) * (2 * q + 1);
  double den = is_r1(r) ? D + 3 : D;
  Closed out;
  out.slem = is_r1(r) ? (D - 3) / (D + 3) : 1.0 - 6.0 / D;
  for (int j = 1; j <= q; j++)
    out.w.push_back(3.0 * (q + j) * (q - j + 1) / den);
  return out;
}

Closed closed_palm(int p, int q, Regime r) {
  Closed out;
  if (2 * p >= q * (q + 1)) {
    double D0 = 6.0 * p + static_cast<double>(q) * (q + 1) * (2 * q + 1);
    double den = is_r1(r) ? D0 + 3 : D0;
    out.slem = is_r1(r) ? (D0 - 3) / (D0 + 3) : 1.0 - 6.0 / D0;
    out.w.push_back(6.0 / den);
    for (int j = 1; j <= q; j++)
      out.w.push_back(3.0 * (q - j + 1) * (q + j) / den);
  } else {
    double D2 = static_cast<double>(q + 1) * (q + 2) *
                (6.0 * p + static_cast<double>(q) * (4 * p + q + 1));
    double bal = 6.0 * (p + q + 1);
    double den = is_r1(r) ? D2 + bal : D2;
    out.slem = is_r1(r) ? (D2 - bal) / (D2 + bal) : 1.0 - 2.0 * bal / D2;
    out.w.push_back(6.0 * (q + 1) * (q + 2) / den);
    for (int j = 1; j <= q; j++)
      out.w.push_back(6.0 * (q - j + 1) * (p * (q + j + 2) + (q + 1) * j) / den);
  }
  return out;
}

Closed closed_lollipop(int p, int q, Regime r) {
  double sq = std::sqrt(2.0 * p * (p + 1));
  // Clique weight stays positive only while sqrt(2p(p+1)) >= q(q+1);
  // beyond that the clique edges drop out and the palm optimum takes over.
  if (2.0 * p * (p + 1) <
      static_cast<double>(q) * q * (q + 1) * (q + 1)) {
    Closed inner = closed_palm(p, q, r);
    Closed out;
    out.slem = inner.slem;
    if (p >= 2) out.w.push_back(0.0);
    out.w.insert(out.w.end(), inner.w.begin(), inner.w.end());
    return out;
  }
  double A = 6.0 * q * (q + 1) * sq + 6.0 * p * (p - 1) + 12.0 * p * (q + 1) +
             2.0 * p * q * (q + 1) * (2 * q + 1) +
             static_cast<double>(q) * (q + 1) * (q + 1) * (q + 2);
  double bal = 6.0 * (p + q + 1);
  double den = is_r1(r) ? A + bal : A;
  Closed out;
  out.slem = is_r1(r) ? (A - bal) / (A + bal) : 1.0 - 2.0 * bal / A;
  if (p >= 2)
    out.w.push_back(6.0 * (2.0 * p * (p + 1) - q * (q + 1) * sq) /
                    (p * (p + 1) * den));
  out.w.push_back(6.0 * (q + 1) * (2.0 * (p + 1) + q * sq) / ((p + 1) * den));
  for (int j = 1; j <= q; j++)
    out.w.push_back(6.0 * (q - j + 1) * (sq + p * (q + j) + (q + 1.0) * j) / den);
  return out;
}

Closed closed_ccs_star(int p, int q, Regime r) {
  double sq = std::sqrt(2.0 * p * (p - 1));
  double A = 3.0 * (p - 1) * (q + 1) + 3.0 * sq * q * (q + 1) +
             static_cast<double>(p) * q * (q + 1) * (2 * q + 1);
  double den = is_r1(r) ? A + 3 : A;
  Closed out;
  out.slem = is_r1(r) ? (A - 3) / (A + 3) : 1.0 - 6.0 / A;
  out.w.push_back(3.0 * (q + 1) * (2.0 * (p - 1) + q * sq) / (p * (p - 1) * den));
  for (int j = 1; j <= q; j++)
    out.w.push_back(3.0 * (q - j + 1) * (sq + p * (q + j)) / (p * den));
  return out;
}

Closed closed_ccs_star2(int p, int q1, int q2, Regime r) {
  double sq = std::sqrt(2.0 * p * (p - 1));
  double A = 3.0 * (p - 1) * (q1 + q2 + 1) +
             static_cast<double>(q1) * (q1 + 1) * (p * (2 * q1 + 1) + 3 * sq) +
             static_cast<double>(q2) * (q2 + 1) * (p * (2 * q2 + 1) + 3 * sq);
  double den = is_r1(r) ? A + 3 : A;
  Closed out;
  out.slem = is_r1(r) ? (A - 3) / (A + 3) : 1.0 - 6.0 / A;
  for (int k = q1; k >= 1; k--)
    out.w.push_back(6.0 * (q1 - k + 1) * (sq + p * (q1 + k)) / (2.0 * p * den));
  out.w.push_back(
      6.0 *
      (2.0 * (p - 1) * (q1 + q2 + 1) +
       sq * (static_cast<double>(q1) * (q1 + 1) + static_cast<double>(q2) * (q2 + 1))) /
      (2.0 * p * (p - 1) * den));
  for (int k = 1; k <= q2; k++)
    out.w.push_back(6.0 * (q2 - k + 1) * (sq + p * (q2 + k)) / (2.0 * p * den));
  return out;
}

Closed closed_product(const std::vector<FamilySpec>& factors, Regime r) {
  double n_total = 1;
  std::vector<double> lam2, counts, edges;
  for (const FamilySpec& f : factors) {
    WeightedGraph g = build_family(f);
    if (g.num_groups() != 1)
      throw not_implemented(
          "product closed form needs single-weight-group factors");
    n_total *= g.n();
    counts.push_back(g.n());
    edges.push_back(g.num_edges());
    lam2.push_back(sym_eigenvalues(g.laplacian({1.0})).values[1]);
  }
  double alpha = 0;
  for (size_t i = 0; i < factors.size(); i++)
    alpha += n_total * edges[i] / (counts[i] * lam2[i]);
  Closed out;
  if (is_r1(r)) {
    out.slem = (2 * alpha - 1) / (2 * alpha + 1);
    for (size_t i = 0; i < factors.size(); i++)
      out.w.push_back(2.0 / ((1 + 2 * alpha) * lam2[i]));
  } else {
    out.slem = (alpha - 1) / alpha;
    for (size_t i = 0; i < factors.size(); i++)
      out.w.push_back(1.0 / (alpha * lam2[i]));
  }
  return out;
}

Closed closed_coupled_complete(int n1, int n2, int n3, Regime r) {
  if (n1 != n3)
    throw not_implemented(
        "coupled_complete closed form needs equal outer blocks");
  double N1 = n1, N2 = n2;
  double w1, w0, slem;
  if (2 * n1 >= n2) {
    if (is_r1(r)) {
      slem = (4 * N1 - 1) / (4 * N1 + 1);
      w1 = 2.0 / (N2 * (4 * N1 + 1));
    } else {
      slem = 1.0 - 1.0 / (2 * N1);
      w1 = 1.0 / (2 * N1 * N2);
    }
    w0 = 0.0;
  } else {
    double D = 4 * N1 * N2 + (N2 - 1) * (N2 - 2 * N1);
    if (is_r1(r)) D += N2;
    slem = is_r1(r) ? (D - 2 * N2) / D : 1.0 - 2 * N2 / D;
    w1 = 2.0 / D;
    w0 = 2.0 * (N2 - 2 * N1) / (N2 * D);
  }
  Closed out;
  out.slem = slem;
  // Group order after empty-group collapse: w-2 (n1>=2), w-1, w0 (n2>=2),
  // w1, w2 (n3>=2).
  if (n1 >= 2) out.w.push_back(0.0);
  out.w.push_back(w1);
  if (n2 >= 2) out.w.push_back(w0);
  out.w.push_back(w1);
  if (n3 >= 2) out.w.push_back(0.0);
  return out;
}

Closed closed_path(int n, Regime r) {
  if (n == 2) {
    if (is_r1(r)) return {0.0, {0.5}};
    throw not_implemented("no balanced-weight optimum for path(2)");
  }
  if (n % 2 == 1) return closed_symmetric_star(2, (n - 1) / 2, r);
  return closed_ccs_star(2, (n - 2) / 2, r);
}

}  // namespace

OptimizationResult closed_form(const FamilySpec& spec, Regime regime) {
  Closed cf;
  switch (spec.family) {
    case Family::path: cf = closed_path(spec.n, regime); break;
    case Family::cycle: cf = closed_cycle(spec.n, regime); break;
    case Family::star: cf = closed_star(spec.n, regime); break;
    case Family::complete: cf = closed_complete(spec.n, regime); break;
    case Family::paw: cf = closed_lollipop(2, 1, regime); break;
    case Family::lollipop: cf = closed_lollipop(spec.p, spec.q, regime); break;
    case Family::ccs_star: cf = closed_ccs_star(spec.p, spec.q, regime); break;
    case Family::ccs_star2:
      cf = closed_ccs_star2(spec.p, spec.q1, spec.q2, regime);
      break;
    case Family::symmetric_star:
      cf = closed_symmetric_star(spec.p, spec.q, regime);
      break;
    case Family::palm: cf = closed_palm(spec.p, spec.q, regime); break;
    case Family::prism: {
      std::vector<FamilySpec> f(2);
      f[0].family = Family::complete;
      f[0].n = spec.n1;
      f[1].family = Family::complete;
      f[1].n = spec.n2;
      cf = closed_product(f, regime);
      break;
    }
    case Family::cartesian_product:
      cf = closed_product(spec.factors, regime);
      break;
    case Family::coupled_complete:
      cf = closed_coupled_complete(spec.n1, spec.n2, spec.n3, regime);
      break;
    default: throw not_implemented("no closed form for this family");
  }
  WeightedGraph base = build_family(spec);
  if (static_cast<int>(cf.w.size()) != base.num_groups())
    throw degenerate_input("closed form emitted a mismatched weight vector");
  OptimizationResult out;
  out.weights = cf.w;
  out.slem = cf.slem;
  out.regime = regime;
  out.iterations = 0;
  out.converged = true;
  out.lambda2 = sym_eigenvalues(base.laplacian(cf.w)).values[1];
  double W = base.total_weight(cf.w);
  out.lambda_max = regime == Regime::AtMostDSquared ? 2.0 * W : 2.0 * W - out.lambda2;
  return out;
}

CrossValidation cross_validate(const FamilySpec& spec, Regime regime,
                               const SolveOptions& opts, double slem_tol) {
  CrossValidation cv;
  cv.closed = closed_form(spec, regime);
  WeightedGraph base = build_family(spec);
  cv.solved = solve_regime(base, regime, base.n(), 0, opts);
  cv.dslem = std::fabs(cv.closed.slem - cv.solved.slem);
  cv.dw.resize(cv.closed.weights.size());
  for (size_t g = 0; g < cv.dw.size(); g++)
    cv.dw[g] = std::fabs(cv.closed.weights[g] - cv.solved.weights[g]);
  cv.pass = cv.dslem <= slem_tol && cv.solved.converged;
  return cv;
}

}  // namespace qcon
