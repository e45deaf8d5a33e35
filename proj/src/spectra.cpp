#include "qcon/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "qcon/errors.hpp"

namespace qcon {

namespace {

struct Rotation {
  double c = 1.0;
  double s = 0.0;
};

// Angle annihilating A(p,q), computed Golub & Van Loan style for stability.
Rotation make_rotation(double app, double aqq, double apq) {
  if (apq == 0.0) return {};
  double theta = (aqq - app) / (2.0 * apq);
  double t = (theta >= 0 ? 1.0 : -1.0) /
             (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
  double c = 1.0 / std::sqrt(t * t + 1.0);
  return {c, t * c};
}

double off_diagonal_norm(const Matrix& A) {
  int n = A.n();
  double s = 0;
  for (int i = 0; i < n; i++)
    for (int j = i + 1; j < n; j++) s += 2.0 * A(i, j) * A(i, j);
  return std::sqrt(s);
}

double frobenius_norm(const Matrix& A) {
  int n = A.n();
  double s = 0;
  for (int i = 0; i < n; i++)
    for (int j = 0; j < n; j++) s += A(i, j) * A(i, j);
  return std::sqrt(s);
}

// Classic cyclic-by-row Jacobi; the reference kernel.
void jacobi_serial(Matrix& A, double stop) {
  int n = A.n();
  for (int sweep = 0; sweep < 100; sweep++) {
    if (off_diagonal_norm(A) <= stop) return;
    for (int p = 0; p < n; p++)
      for (int q = p + 1; q < n; q++) {
        auto [c, s] = make_rotation(A(p, p), A(q, q), A(p, q));
        if (s == 0.0) continue;
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
      }
  }
  throw degenerate_input("eigensolver failed to converge");
}

// One parallel round rotates a disjoint set of index pairs.  Angles are
// computed up front (no other pair touches the entries they read), then all
// row combinations are applied, then all column combinations, so the result
// is identical for any thread count.
void apply_round(Matrix& A, const std::vector<std::pair<int, int>>& pairs) {
  int n = A.n();
  int np = static_cast<int>(pairs.size());
  std::vector<Rotation> rot(np);
#pragma omp parallel for schedule(static) if (n > 127)
  for (int t = 0; t < np; t++) {
    auto [p, q] = pairs[t];
    rot[t] = make_rotation(A(p, p), A(q, q), A(p, q));
  }
#pragma omp parallel for schedule(static) if (n > 127)
  for (int t = 0; t < np; t++) {
    auto [p, q] = pairs[t];
    auto [c, s] = rot[t];
    if (s == 0.0) continue;
    for (int k = 0; k < n; k++) {
      double apk = A(p, k), aqk = A(q, k);
      A(p, k) = c * apk - s * aqk;
      A(q, k) = s * apk + c * aqk;
    }
  }
#pragma omp parallel for schedule(static) if (n > 127)
  for (int t = 0; t < np; t++) {
    auto [p, q] = pairs[t];
    auto [c, s] = rot[t];
    if (s == 0.0) continue;
    for (int k = 0; k < n; k++) {
      double akp = A(k, p), akq = A(k, q);
      A(k, p) = c * akp - s * akq;
      A(k, q) = s * akp + c * akq;
    }
    A(p, q) = A(q, p) = 0.0;
  }
}

// Round-robin tournament Jacobi: each sweep is m-1 rounds of disjoint pairs
// covering every pair exactly once (m = n rounded up to even; the padding
// index sits out).
void jacobi_parallel(Matrix& A, double stop) {
  int n = A.n();
  int m = (n % 2 == 0) ? n : n + 1;
  std::vector<std::pair<int, int>> pairs;
  for (int sweep = 0; sweep < 100; sweep++) {
    if (off_diagonal_norm(A) <= stop) return;
    for (int r = 0; r < m - 1; r++) {
      pairs.clear();
      for (int k = 0; k < m / 2; k++) {
        int a = (k == 0) ? 0 : (k - 1 + r) % (m - 1) + 1;
        int b = (m - 2 - k + r) % (m - 1) + 1;
        if (a >= n || b >= n) continue;
        pairs.push_back({std::min(a, b), std::max(a, b)});
      }
      apply_round(A, pairs);
    }
  }
  throw degenerate_input("eigensolver failed to converge");
}

Matrix checked_symmetric_copy(const Matrix& M, double sym_tol) {
  int n = M.n();
  if (n < 1) throw invalid_argument("empty matrix");
  double scale = std::max(1.0, M.max_abs());
  Matrix A(n);
  for (int i = 0; i < n; i++)
    for (int j = 0; j < n; j++) {
      if (std::fabs(M(i, j) - M(j, i)) > sym_tol * scale)
        throw invalid_argument("matrix is not symmetric");
      A(i, j) = 0.5 * (M(i, j) + M(j, i));
    }
  return A;
}

Spectrum validated_laplacian_spectrum(const Matrix& L, double tol) {
  int n = L.n();
  double scale = std::max(1.0, L.max_abs());
  for (int i = 0; i < n; i++) {
    double row = 0;
    for (int j = 0; j < n; j++) row += L(i, j);
    if (std::fabs(row) > tol * scale)
      throw invalid_argument("Laplacian row sums must vanish");
  }
  Spectrum sp = sym_eigenvalues(L, tol);
  if (sp.values.front() < -tol * scale)
    throw invalid_argument("Laplacian must be positive semidefinite");
  return sp;
}

}  // namespace

Spectrum sym_eigenvalues(const Matrix& M, double sym_tol, Exec exec) {
  Matrix A = checked_symmetric_copy(M, sym_tol);
  int n = A.n();
  if (n > 1) {
    double stop = 1e-14 * std::max(1.0, frobenius_norm(A));
    if (exec == Exec::Serial)
      jacobi_serial(A, stop);
    else
      jacobi_parallel(A, stop);
  }
  Spectrum sp;
  sp.values.resize(n);
  for (int i = 0; i < n; i++) sp.values[i] = A(i, i);
  std::sort(sp.values.begin(), sp.values.end());
  return sp;
}

double lambda2(const Matrix& L, double tol) {
  if (L.n() < 2) throw invalid_argument("lambda2 needs at least 2 vertices");
  return validated_laplacian_spectrum(L, tol).values[1];
}

double lambda_max(const Matrix& L, double tol) {
  return validated_laplacian_spectrum(L, tol).values.back();
}

double slem_of_weight_matrix(const Matrix& L, double tol) {
  if (L.n() < 2) throw invalid_argument("SLEM needs at least 2 vertices");
  Spectrum sp = validated_laplacian_spectrum(L, tol);
  if (sp.values[1] <= tol)
    throw degenerate_input("weight matrix has a reducible support");
  double m = 0;
  for (size_t i = 1; i < sp.values.size(); i++)
    m = std::max(m, std::fabs(1.0 - sp.values[i]));
  return m;
}

bool spectrum_contains(const Spectrum& a, const Spectrum& b, double tol) {
  size_t i = 0;
  for (double bv : b.values) {
    while (i < a.values.size() && a.values[i] < bv - tol) i++;
    if (i == a.values.size() || std::fabs(a.values[i] - bv) > tol) return false;
    i++;
  }
  return true;
}

namespace {

// Largest eigenvalue of S*I - L restricted to the complement of the constant
// vector, via Lanczos with full reorthogonalization. S - theta_max = lambda2.
double lanczos_theta_max(const WeightedGraph& g, const WeightVector& w, double S,
                         int max_steps, int start_phase) {
  const int n = g.n();
  std::vector<double> degree(n, 0.0);
  for (const Edge& e : g.edges()) {
    degree[e.i] += w[e.group];
    degree[e.j] += w[e.group];
  }
  auto deflate = [&](std::vector<double>& x) {
    double mean = 0;
    for (double v : x) mean += v;
    mean /= n;
    for (double& v : x) v -= mean;
  };
  std::vector<std::vector<double>> basis;
  std::vector<double> alpha, beta;
  std::vector<double> v(n);
  for (int i = 0; i < n; i++) v[i] = std::sin(static_cast<double>(i + start_phase + 1));
  deflate(v);
  double norm = std::sqrt(std::inner_product(v.begin(), v.end(), v.begin(), 0.0));
  if (norm < 1e-30) {
    v.assign(n, 0.0);
    v[0] = 1.0;
    deflate(v);
    norm = std::sqrt(std::inner_product(v.begin(), v.end(), v.begin(), 0.0));
  }
  for (double& x : v) x /= norm;

  std::vector<double> u(n);
  int steps = std::min(max_steps, n);
  for (int j = 0; j < steps; j++) {
    basis.push_back(v);
    for (int i = 0; i < n; i++) u[i] = (S - degree[i]) * v[i];
    for (const Edge& e : g.edges()) {
      u[e.i] += w[e.group] * v[e.j];
      u[e.j] += w[e.group] * v[e.i];
    }
    deflate(u);
    alpha.push_back(std::inner_product(v.begin(), v.end(), u.begin(), 0.0));
    for (int pass = 0; pass < 2; pass++)
      for (const std::vector<double>& b : basis) {
        double c = std::inner_product(b.begin(), b.end(), u.begin(), 0.0);
        for (int i = 0; i < n; i++) u[i] -= c * b[i];
      }
    double bnorm = std::sqrt(std::inner_product(u.begin(), u.end(), u.begin(), 0.0));
    if (bnorm < 1e-13 * std::max(1.0, S) || j + 1 == steps) break;
    beta.push_back(bnorm);
    for (int i = 0; i < n; i++) v[i] = u[i] / bnorm;
  }
  int m = static_cast<int>(alpha.size());
  Matrix T(m);
  for (int i = 0; i < m; i++) {
    T(i, i) = alpha[i];
    if (i + 1 < m) T(i, i + 1) = T(i + 1, i) = beta[i];
  }
  return sym_eigenvalues(T).values.back();
}

}  // namespace

double lambda2_lanczos(const WeightedGraph& g, const WeightVector& w,
                       int max_steps) {
  if (g.n() < 2) throw invalid_argument("lambda2 needs at least 2 vertices");
  if (static_cast<int>(w.size()) != g.num_groups())
    throw invalid_argument("weight count does not match group count");
  double W = 0;
  for (int gi = 0; gi < g.num_groups(); gi++) {
    if (w[gi] < 0)
      throw invalid_argument("lambda2_lanczos requires nonnegative weights");
    W += w[gi] * g.group_size(gi);
  }
  double S = 2.0 * std::max(W, 1e-300);
  double l2 = S - lanczos_theta_max(g, w, S, max_steps, 0);
  l2 = std::min(l2, S - lanczos_theta_max(g, w, S, max_steps, 1));
  return l2;
}

}  // namespace qcon
