// Timing comparison of the OpenMP kernels against their serial references:
// the dense symmetric eigensolver and the density-matrix consensus step.
// Each case reports both runtimes and the worst discrepancy between results.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "qcon/quantum.hpp"
#include "qcon/spectra.hpp"

using namespace qcon;

namespace {

double now_ms() {
  using clock = std::chrono::steady_clock;
  return std::chrono::duration<double, std::milli>(
             clock::now().time_since_epoch())
      .count();
}

template <typename F>
double best_of(int reps, F&& f) {
  double best = 1e300;
  for (int r = 0; r < reps; r++) {
    double t0 = now_ms();
    f();
    best = std::min(best, now_ms() - t0);
  }
  return best;
}

void bench_eigen(int n) {
  std::mt19937_64 rng(12345);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Matrix M(n);
  for (int i = 0; i < n; i++)
    for (int j = 0; j <= i; j++) {
      double v = u(rng);
      M(i, j) = v;
      M(j, i) = v;
    }
  int reps = n >= 480 ? 1 : 3;
  Spectrum ser, par;
  double ts = best_of(reps, [&] { ser = sym_eigenvalues(M, 1e-10, Exec::Serial); });
  double tp = best_of(reps, [&] { par = sym_eigenvalues(M, 1e-10, Exec::Parallel); });
  double dev = 0;
  for (int i = 0; i < n; i++)
    dev = std::max(dev, std::fabs(ser.values[i] - par.values[i]));
  std::printf("eigen   n=%-4d  serial %9.1f ms  parallel %9.1f ms  speedup %.2fx  max dev %.2e\n",
              n, ts, tp, ts / tp, dev);
}

void bench_step(int N) {
  WeightedGraph base = build_family(parse_family("path(" + std::to_string(N) + ")"));
  WeightVector w(base.num_groups(), 1.0 / (2.0 * base.num_edges()));
  DensityMatrix rho = random_density_matrix(2, N, 7);
  DensityMatrix ser, par;
  double ts = best_of(3, [&] { ser = step(rho, base, w, false, Exec::Serial); });
  double tp = best_of(3, [&] { par = step(rho, base, w, false, Exec::Parallel); });
  double dev = 0;
  int D = ser.m.n();
  for (int i = 0; i < D; i++)
    for (int j = 0; j < D; j++)
      dev = std::max(dev, std::abs(ser.m(i, j) - par.m(i, j)));
  std::printf("step    D=%-4d  serial %9.1f ms  parallel %9.1f ms  speedup %.2fx  max dev %.2e\n",
              D, ts, tp, ts / tp, dev);
}

}  // namespace

int main() {
#ifdef _OPENMP
  std::printf("OpenMP threads: %d\n", omp_get_max_threads());
#else
  std::printf("OpenMP: not enabled (serial build)\n");
#endif
  bench_eigen(240);
  bench_eigen(480);
  bench_eigen(720);
  bench_step(8);
  bench_step(9);
  return 0;
}
