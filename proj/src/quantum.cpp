#include "qcon/quantum.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <random>
#include <vector>

#include "qcon/errors.hpp"

namespace qcon {

namespace {

std::int64_t power_dim(int d, int N) {
  if (d < 2) throw invalid_argument("local dimension must be >= 2");
  if (N < 1) throw invalid_argument("need at least one site");
  std::int64_t D = 1;
  for (int k = 0; k < N; k++) {
    D *= d;
    if (D > 1'000'000) throw resource_error("Hilbert space dimension too large");
  }
  return D;
}

// Index permutation swapping the (1-based) tensor positions j and k.
std::vector<int> swap_table(int j, int k, int d, int N) {
  std::int64_t D = power_dim(d, N);
  if (j < 1 || k < 1 || j > N || k > N || j == k)
    throw invalid_argument("swap positions must be distinct and in 1..N");
  // Position 1 is the most significant digit.
  std::int64_t sj = 1, sk = 1;
  for (int t = 0; t < N - j; t++) sj *= d;
  for (int t = 0; t < N - k; t++) sk *= d;
  std::vector<int> tab(D);
  for (std::int64_t a = 0; a < D; a++) {
    int dj = static_cast<int>(a / sj) % d;
    int dk = static_cast<int>(a / sk) % d;
    tab[a] = static_cast<int>(a + (dk - dj) * sj + (dj - dk) * sk);
  }
  return tab;
}

void check_state(const DensityMatrix& rho) {
  std::int64_t D = power_dim(rho.d, rho.N);
  if (rho.m.n() != D)
    throw invalid_argument("density matrix dimension must be d^N");
}

}  // namespace

double trace_real(const CMatrix& m) {
  double t = 0;
  for (int i = 0; i < m.n(); i++) t += m(i, i).real();
  return t;
}

double hermiticity_error(const CMatrix& m) {
  double e = 0;
  for (int i = 0; i < m.n(); i++)
    for (int j = i; j < m.n(); j++)
      e = std::max(e, std::abs(m(i, j) - std::conj(m(j, i))));
  return e;
}

CMatrix swap_unitary(int j, int k, int d, int N) {
  std::vector<int> tab = swap_table(j, k, d, N);
  CMatrix U(static_cast<int>(tab.size()));
  for (size_t a = 0; a < tab.size(); a++) U(tab[a], static_cast<int>(a)) = 1.0;
  return U;
}

DensityMatrix step(const DensityMatrix& rho, const WeightedGraph& base,
                   const WeightVector& w, bool unsafe, Exec exec) {
  check_state(rho);
  if (base.n() != rho.N)
    throw invalid_argument("base graph order must match the number of sites");
  if (static_cast<int>(w.size()) != base.num_groups())
    throw invalid_argument("weight vector length != number of groups");
  if (!unsafe) {
    double W = base.total_weight(w);
    for (double wg : w)
      if (wg < -1e-12)
        throw precondition_error("negative weights break complete positivity");
    if (W > 1.0 + 1e-12)
      throw precondition_error("total weight above 1 breaks complete positivity");
  }
  int D = rho.m.n();
  std::vector<std::vector<int>> tabs;
  std::vector<double> we;
  tabs.reserve(base.num_edges());
  for (const Edge& e : base.edges()) {
    tabs.push_back(swap_table(e.i + 1, e.j + 1, rho.d, rho.N));
    we.push_back(w[e.group]);
  }
  DensityMatrix out{rho.d, rho.N, CMatrix(D)};
  int E = static_cast<int>(tabs.size());
  bool parallel = exec == Exec::Parallel;
#pragma omp parallel for schedule(static) if (parallel)
  for (int a = 0; a < D; a++) {
    for (int b = 0; b < D; b++) {
      cplx acc = rho.m(a, b);
      for (int e = 0; e < E; e++)
        acc += we[e] * (rho.m(tabs[e][a], tabs[e][b]) - rho.m(a, b));
      out.m(a, b) = acc;
    }
  }
  return out;
}

DensityMatrix consensus_state(const DensityMatrix& rho0) {
  check_state(rho0);
  int N = rho0.N;
  int D = rho0.m.n();
  if (N > 7 || D > 512)
    throw resource_error("symmetrization over all permutations is guarded to "
                         "N <= 7 and d^N <= 512");
  std::vector<std::int64_t> stride(N);
  stride[N - 1] = 1;
  for (int j = N - 2; j >= 0; j--) stride[j] = stride[j + 1] * rho0.d;
  std::vector<int> perm(N);
  std::iota(perm.begin(), perm.end(), 0);
  DensityMatrix out{rho0.d, rho0.N, CMatrix(D)};
  std::vector<int> tab(D);
  std::int64_t count = 0;
  do {
    for (int a = 0; a < D; a++) {
      std::int64_t image = 0;
      for (int j = 0; j < N; j++) {
        int digit = static_cast<int>(a / stride[j]) % rho0.d;
        image += digit * stride[perm[j]];
      }
      tab[a] = static_cast<int>(image);
    }
    for (int a = 0; a < D; a++)
      for (int b = 0; b < D; b++) out.m(tab[a], tab[b]) += rho0.m(a, b);
    count++;
  } while (std::next_permutation(perm.begin(), perm.end()));
  double inv = 1.0 / static_cast<double>(count);
  for (int a = 0; a < D; a++)
    for (int b = 0; b < D; b++) out.m(a, b) *= inv;
  return out;
}

Trajectory simulate(const DensityMatrix& rho0, const WeightedGraph& base,
                    const WeightVector& w, int T, bool unsafe) {
  if (T < 0) throw invalid_argument("step count must be nonnegative");
  DensityMatrix target = consensus_state(rho0);
  int D = rho0.m.n();
  auto distance = [&](const DensityMatrix& rho) {
    double s = 0;
    for (int a = 0; a < D; a++)
      for (int b = 0; b < D; b++) s += std::norm(rho.m(a, b) - target.m(a, b));
    return std::sqrt(s);
  };
  Trajectory tr;
  DensityMatrix rho = rho0;
  tr.distances.push_back(distance(rho));
  for (int t = 0; t < T; t++) {
    rho = step(rho, base, w, unsafe);
    tr.distances.push_back(distance(rho));
  }
  double log_sum = 0;
  int terms = 0;
  for (int t = T / 2; t + 1 <= T; t++) {
    if (tr.distances[t] < 1e-13 || tr.distances[t + 1] < 1e-13) continue;
    log_sum += std::log(tr.distances[t + 1] / tr.distances[t]);
    terms++;
  }
  tr.rate_estimate = terms > 0 ? std::exp(log_sum / terms) : 0.0;
  return tr;
}

GellMannBasis gell_mann_basis(int d) {
  if (d < 2) throw invalid_argument("local dimension must be >= 2");
  GellMannBasis basis;
  basis.d = d;
  CMatrix id(d);
  for (int i = 0; i < d; i++) id(i, i) = 1.0;
  basis.el.push_back(id);
  for (int l = 1; l < d; l++) {
    for (int k = 0; k < l; k++) {
      CMatrix sym(d), anti(d);
      sym(k, l) = sym(l, k) = 1.0;
      anti(k, l) = cplx(0, -1);
      anti(l, k) = cplx(0, 1);
      basis.el.push_back(sym);
      basis.el.push_back(anti);
    }
    CMatrix diag(d);
    double scale = std::sqrt(2.0 / (static_cast<double>(l) * (l + 1)));
    for (int k = 0; k < l; k++) diag(k, k) = scale;
    diag(l, l) = -scale * l;
    basis.el.push_back(diag);
  }
  return basis;
}

namespace {

std::vector<int> digits_base(std::int64_t x, int radix, int N) {
  std::vector<int> out(N);
  for (int j = N - 1; j >= 0; j--) {
    out[j] = static_cast<int>(x % radix);
    x /= radix;
  }
  return out;
}

}  // namespace

std::vector<double> decompose(const DensityMatrix& rho, const GellMannBasis& basis) {
  check_state(rho);
  if (basis.d != rho.d) throw invalid_argument("basis dimension mismatch");
  int d = rho.d, N = rho.N, D = rho.m.n();
  std::int64_t M = 1;
  for (int j = 0; j < N; j++) M *= d * d;
  std::vector<double> coeffs(M);
  double half_d = d / 2.0;
#pragma omp parallel for schedule(static)
  for (std::int64_t mu = 0; mu < M; mu++) {
    std::vector<int> mj = digits_base(mu, d * d, N);
    int nonzero = 0;
    for (int j = 0; j < N; j++)
      if (mj[j] != 0) nonzero++;
    cplx acc = 0;
    for (int a = 0; a < D; a++) {
      std::vector<int> da = digits_base(a, d, N);
      for (int b = 0; b < D; b++) {
        std::vector<int> db = digits_base(b, d, N);
        cplx prod = rho.m(a, b);
        for (int j = 0; j < N && prod != cplx(0); j++)
          prod *= basis.el[mj[j]](db[j], da[j]);
        acc += prod;
      }
    }
    coeffs[mu] = acc.real() * std::pow(half_d, nonzero);
  }
  return coeffs;
}

DensityMatrix recompose(const std::vector<double>& coeffs, const GellMannBasis& basis,
                        int N) {
  int d = basis.d;
  std::int64_t D = power_dim(d, N);
  std::int64_t M = 1;
  for (int j = 0; j < N; j++) M *= d * d;
  if (static_cast<std::int64_t>(coeffs.size()) != M)
    throw invalid_argument("coefficient vector has the wrong length");
  DensityMatrix rho{d, N, CMatrix(static_cast<int>(D))};
  double inv = 1.0;
  for (int j = 0; j < N; j++) inv /= d;
  for (std::int64_t mu = 0; mu < M; mu++) {
    if (coeffs[mu] == 0.0) continue;
    std::vector<int> mj = digits_base(mu, d * d, N);
    for (int a = 0; a < D; a++) {
      std::vector<int> da = digits_base(a, d, N);
      for (int b = 0; b < D; b++) {
        std::vector<int> db = digits_base(b, d, N);
        cplx prod = coeffs[mu] * inv;
        for (int j = 0; j < N && prod != cplx(0); j++)
          prod *= basis.el[mj[j]](da[j], db[j]);
        rho.m(static_cast<int>(a), static_cast<int>(b)) += prod;
      }
    }
  }
  return rho;
}

DensityMatrix random_density_matrix(int d, int N, std::uint64_t seed) {
  std::int64_t D = power_dim(d, N);
  if (D > 4096) throw resource_error("random state dimension too large");
  std::mt19937_64 rng(seed);
  // Hand-rolled Box-Muller keeps the stream identical across standard
  // library implementations.
  auto gauss = [&rng]() {
    double u1 = (static_cast<double>(rng() >> 11) + 1.0) * 0x1.0p-53;
    double u2 = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
  };
  CMatrix G(static_cast<int>(D));
  for (int i = 0; i < D; i++)
    for (int j = 0; j < D; j++) G(i, j) = cplx(gauss(), gauss());
  DensityMatrix rho{d, N, CMatrix(static_cast<int>(D))};
  for (int i = 0; i < D; i++)
    for (int j = 0; j < D; j++) {
      cplx acc = 0;
      for (int k = 0; k < D; k++) acc += G(i, k) * std::conj(G(j, k));
      rho.m(i, j) = acc;
    }
  double tr = trace_real(rho.m);
  for (int i = 0; i < D; i++)
    for (int j = 0; j < D; j++) rho.m(i, j) /= tr;
  return rho;
}

ComponentDynamicsReport verify_component_dynamics(const WeightedGraph& base,
                                                  const WeightVector& w, int d,
                                                  int trials, std::uint64_t seed,
                                                  double tol) {
  int N = base.n();
  if (static_cast<int>(w.size()) != base.num_groups())
    throw invalid_argument("weight vector length != number of groups");
  GellMannBasis basis = gell_mann_basis(d);
  std::int64_t M = 1;
  for (int j = 0; j < N; j++) M *= d * d;
  // Multi-index permutations mirroring the swap of tensor positions.
  std::vector<std::vector<std::int64_t>> perms;
  std::vector<std::int64_t> stride(N);
  stride[N - 1] = 1;
  for (int j = N - 2; j >= 0; j--) stride[j] = stride[j + 1] * d * d;
  for (const Edge& e : base.edges()) {
    std::vector<std::int64_t> tab(M);
    for (std::int64_t mu = 0; mu < M; mu++) {
      int di = static_cast<int>(mu / stride[e.i]) % (d * d);
      int dj = static_cast<int>(mu / stride[e.j]) % (d * d);
      tab[mu] = mu + (dj - di) * stride[e.i] + (di - dj) * stride[e.j];
    }
    perms.push_back(std::move(tab));
  }
  ComponentDynamicsReport rep;
  rep.trials = trials;
  for (int trial = 0; trial < trials; trial++) {
    DensityMatrix rho = random_density_matrix(d, N, seed + trial);
    std::vector<double> c = decompose(rho, basis);
    std::vector<double> expect(c.size());
    for (std::int64_t mu = 0; mu < M; mu++) {
      double acc = c[mu];
      for (size_t e = 0; e < perms.size(); e++)
        acc += w[base.edges()[e].group] * (c[perms[e][mu]] - c[mu]);
      expect[mu] = acc;
    }
    std::vector<double> got = decompose(step(rho, base, w, true), basis);
    for (std::int64_t mu = 0; mu < M; mu++)
      rep.max_deviation = std::max(rep.max_deviation, std::fabs(got[mu] - expect[mu]));
  }
  rep.pass = rep.max_deviation <= tol;
  return rep;
}

std::vector<double> hermitian_eigenvalues(const CMatrix& m, double tol) {
  int n = m.n();
  double scale = 0;
  for (int i = 0; i < n; i++)
    for (int j = 0; j < n; j++) scale = std::max(scale, std::abs(m(i, j)));
  if (hermiticity_error(m) > tol * std::max(1.0, scale))
    throw invalid_argument("matrix is not Hermitian");
  CMatrix A = m;
  for (int i = 0; i < n; i++)
    for (int j = 0; j < i; j++) {
      cplx avg = 0.5 * (A(j, i) + std::conj(A(i, j)));
      A(j, i) = avg;
      A(i, j) = std::conj(avg);
    }
  for (int i = 0; i < n; i++) A(i, i) = A(i, i).real();
  double stop = 1e-14 * std::max(1.0, scale * n);
  for (int sweep = 0; sweep < 100; sweep++) {
    double off = 0;
    for (int i = 0; i < n; i++)
      for (int j = i + 1; j < n; j++) off += 2.0 * std::norm(A(i, j));
    if (std::sqrt(off) <= stop) break;
    if (sweep == 99) throw degenerate_input("eigensolver failed to converge");
    for (int p = 0; p < n; p++)
      for (int q = p + 1; q < n; q++) {
        double mag = std::abs(A(p, q));
        if (mag == 0.0) continue;
        // Absorb the phase into column/row q, then rotate as in the real case.
        cplx phase = A(p, q) / mag;
        for (int k = 0; k < n; k++) A(k, q) *= std::conj(phase);
        for (int k = 0; k < n; k++) A(q, k) *= phase;
        double app = A(p, p).real(), aqq = A(q, q).real();
        double theta = (aqq - app) / (2.0 * mag);
        double t = (theta >= 0 ? 1.0 : -1.0) /
                   (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
        double c = 1.0 / std::sqrt(t * t + 1.0), s = t * c;
        for (int k = 0; k < n; k++) {
          cplx akp = A(k, p), akq = A(k, q);
          A(k, p) = c * akp - s * akq;
          A(k, q) = s * akp + c * akq;
        }
        for (int k = 0; k < n; k++) {
          cplx apk = A(p, k), aqk = A(q, k);
          A(p, k) = c * apk - s * aqk;
          A(q, k) = s * apk + c * aqk;
        }
        A(p, q) = A(q, p) = 0.0;
        A(p, p) = A(p, p).real();
        A(q, q) = A(q, q).real();
      }
  }
  std::vector<double> values(n);
  for (int i = 0; i < n; i++) values[i] = A(i, i).real();
  std::sort(values.begin(), values.end());
  return values;
}

}  // namespace qcon
