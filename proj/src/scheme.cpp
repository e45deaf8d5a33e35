#include "qcon/scheme.hpp"

#include <algorithm>
#include <numeric>
#include <vector>

#include "qcon/errors.hpp"

namespace qcon {

namespace {

std::int64_t binom2(std::int64_t x) { return x * (x - 1) / 2; }

std::int64_t factorial(int n) {
  std::int64_t f = 1;
  for (int k = 2; k <= n; k++) f *= k;  // fits: partition sizes are <= 20
  return f;
}

}  // namespace

Rational make_rational(std::int64_t num, std::int64_t den) {
  if (den == 0) throw invalid_argument("rational with zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  std::int64_t g = std::gcd(num < 0 ? -num : num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
  if (num == 0) den = 1;
  return Rational{num, den};
}

std::int64_t class_size(const Partition& cycle_type) {
  // N! over the centralizer order: product of cycle lengths times
  // factorials of length multiplicities.
  std::int64_t centralizer = 1;
  int run = 0;
  for (int i = 0; i < cycle_type.num_parts(); i++) {
    centralizer *= cycle_type.part(i);
    run = (i > 0 && cycle_type.part(i) == cycle_type.part(i - 1)) ? run + 1 : 1;
    centralizer *= run;
  }
  return factorial(cycle_type.n()) / centralizer;
}

std::int64_t transposition_eigenvalue(const Partition& n) {
  Partition conj = n.conjugate();
  std::int64_t v = 0;
  for (int i = 0; i < n.num_parts(); i++) v += binom2(n.part(i));
  for (int i = 0; i < conj.num_parts(); i++) v -= binom2(conj.part(i));
  return v;
}

Rational character_of_transpositions(const Partition& n) {
  return make_rational(specht_dimension(n) * transposition_eigenvalue(n),
                       binom2(n.n()));
}

Spectrum complete_induced_spectrum(int N, const Partition& p, double w) {
  if (p.n() != N) throw invalid_argument("partition must be of N");
  std::int64_t pairs = binom2(N);
  bool regular = p.num_parts() == N;  // p = (1,...,1)
  bool standard = p.num_parts() == 2 && p.part(1) == 1;
  Spectrum sp;
  for (const Partition& shape : enumerate_partitions(N)) {
    Dominance dom = compare_dominance(shape, p);
    if (dom != Dominance::dominates && dom != Dominance::equal) continue;
    double value = w * static_cast<double>(pairs - transposition_eigenvalue(shape));
    std::int64_t mult = 1;
    if (regular) {
      std::int64_t dim = specht_dimension(shape);
      mult = dim * dim;
    } else if (standard) {
      mult = shape.num_parts() == 1 ? 1 : N - 1;
    }
    for (std::int64_t k = 0; k < mult; k++) sp.values.push_back(value);
  }
  if (!regular && !standard) {
    std::sort(sp.values.begin(), sp.values.end());
    sp.values.erase(std::unique(sp.values.begin(), sp.values.end()),
                    sp.values.end());
  }
  std::sort(sp.values.begin(), sp.values.end());
  return sp;
}

CompleteOptimum complete_graph_optimum(int N, int d) {
  if (N < 2) throw invalid_argument("complete graph needs N >= 2");
  if (d < 2) throw invalid_argument("local dimension must be >= 2");
  std::int64_t pairs = binom2(N);
  std::int64_t p_min = pairs;  // attained by (N); every other shape is lower
  Partition argmin({N});
  for (const Partition& shape : enumerate_partitions(N, d * d)) {
    std::int64_t val = transposition_eigenvalue(shape);
    if (val <= p_min) {  // ties resolve to the least dominant (enumerated last)
      p_min = val;
      argmin = shape;
    }
  }
  CompleteOptimum out;
  out.N = N;
  out.d = d;
  out.argmin = argmin;
  out.w = 2.0 / static_cast<double>(N + pairs - p_min);
  out.slem = 1.0 - N * out.w;
  return out;
}

CompleteOptimum qubit_category_optimum(int N) {
  if (N < 4) throw invalid_argument("qubit closed forms need N >= 4");
  double n = N;
  CompleteOptimum out;
  out.N = N;
  out.d = 2;
  switch (N % 4) {
    case 0:
      out.w = 16.0 / (n * (3 * n + 20));
      out.slem = 1.0 - 16.0 / (3 * n + 20);
      break;
    case 1:
    case 3:
      out.w = 16.0 / (3 * n * n + 20 * n - 15);
      out.slem = 1.0 - 16.0 * n / (3 * n * n + 20 * n - 15);
      break;
    default:
      out.w = 16.0 / (3 * n * n + 20 * n - 20);
      out.slem = 1.0 - 16.0 * n / (3 * n * n + 20 * n - 20);
      break;
  }
  // Balanced partition into four parts.
  std::vector<int> parts(4, N / 4);
  for (int i = 0; i < N % 4; i++) parts[i]++;
  out.argmin = Partition(parts);
  return out;
}

}  // namespace qcon
