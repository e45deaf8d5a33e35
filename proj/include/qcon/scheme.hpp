#pragma once

#include <cstdint>

#include "qcon/partitions.hpp"
#include "qcon/spectra.hpp"

namespace qcon {

// Exact fraction, only as rich as the character formula needs.
struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;  // > 0, gcd(num,den) = 1
  bool operator==(const Rational&) const = default;
};

Rational make_rational(std::int64_t num, std::int64_t den);

// Size of the conjugacy class of S_N with the given cycle type.
std::int64_t class_size(const Partition& cycle_type);

// Eigenvalue of the transposition-class adjacency operator on the Specht
// module of shape n: sum_j [C(n_j,2) - C(n'_j,2)] with n' the conjugate.
std::int64_t transposition_eigenvalue(const Partition& n);

// Irreducible character on the transposition class divided by the class
// size: dim(n) * transposition_eigenvalue(n) / C(N,2).
Rational character_of_transpositions(const Partition& n);

// Laplacian spectrum of the induced graph of p over the complete base with
// uniform weight w: values w*(C(N,2) - P_{n'}) over n' dominating p.
// Full multiplicities only for p=(1,...,1) (dim^2 each) and p=(N-1,1)
// ({1, N-1}); other shapes get the distinct-value set.
Spectrum complete_induced_spectrum(int N, const Partition& p, double w);

struct CompleteOptimum {
  int N = 0;
  int d = 0;
  double w = 0;
  double slem = 0;
  // Feasible partition minimizing the transposition eigenvalue.
  Partition argmin = Partition({1});
};

// Optimal uniform weight for the complete base over N qudits of dimension d:
// minimizes max{1 - N*w, w*(C(N,2) - P_min) - 1} over the partitions with
// at most d^2 parts.
CompleteOptimum complete_graph_optimum(int N, int d);

// The d=2 closed forms by N mod 4; defined for N >= 4.
CompleteOptimum qubit_category_optimum(int N);

}  // namespace qcon
