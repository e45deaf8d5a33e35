#pragma once

#include <cstdint>
#include <vector>

#include "qcon/graph.hpp"
#include "qcon/partitions.hpp"

namespace qcon {

enum class Regime {
  AtMostDSquared,   // N <= d^2: lambda_max term is 2W
  DSquaredPlusOne,  // N = d^2+1: lambda_max term is 2W - lambda2
  General,          // N > d^2+1: lambda_max of the least dominant feasible induced graph
  Classical,        // plain graph consensus: lambda_max of the base Laplacian
};

const char* regime_name(Regime r);

Regime regime_of(int N, int d);

// Dominance-minimum among partitions of N with at most d^2 parts
// (the balanced partition).
Partition least_dominant_feasible(int N, int d);

struct Objective {
  double slem = 0;
  double lambda2 = 0;
  double lambda_max = 0;
};

// Evaluate max{1 - lambda2, lambda_max - 1} with lambda_max per regime_of(N,d).
Objective objective(const WeightedGraph& base, const WeightVector& w, int N, int d);

struct SolveOptions {
  double tol = 1e-8;
  int max_iters = 200000;
  std::uint64_t seed = 0;  // accepted for reproducibility plumbing; solver is deterministic
};

struct OptimizationResult {
  WeightVector weights;
  double slem = 0;
  double lambda2 = 0;
  double lambda_max = 0;
  Regime regime = Regime::Classical;
  int iterations = 0;
  bool converged = false;
};

// Minimize the regime objective over per-group weights by projected
// subgradient descent with best-iterate tracking. Deterministic.
OptimizationResult solve_generic(const WeightedGraph& base, int N, int d,
                                 const SolveOptions& opts = {});

// Same solver with the regime forced (General still needs N and d for the
// induced-graph lambda_max; the other regimes ignore d).
OptimizationResult solve_regime(const WeightedGraph& base, Regime regime, int N,
                                int d, const SolveOptions& opts = {});

OptimizationResult solve_classical(const WeightedGraph& base,
                                   const SolveOptions& opts = {});

// Closed-form optima from the family tables. Supports the two quantum
// regimes; throws not_implemented for unsupported (family, regime) pairs
// (e.g. coupled_complete with n1 != n3).
OptimizationResult closed_form(const FamilySpec& spec, Regime regime);

struct CrossValidation {
  OptimizationResult closed;
  OptimizationResult solved;
  double dslem = 0;
  std::vector<double> dw;
  bool pass = false;
};

// Run closed_form and the generic solver on the same family/regime and
// compare; pass iff |dslem| <= slem_tol and the solver converged.
CrossValidation cross_validate(const FamilySpec& spec, Regime regime,
                               const SolveOptions& opts = {},
                               double slem_tol = 1e-4);

}  // namespace qcon
