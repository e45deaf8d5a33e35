#pragma once

#include <vector>

#include "qcon/errors.hpp"
#include "qcon/graph.hpp"
#include "qcon/matrix.hpp"

namespace qcon {

struct Spectrum {
  std::vector<double> values;  // ascending
  int size() const { return static_cast<int>(values.size()); }
};

// Which eigensolver kernel to run. Parallel is the default production path;
// Serial is the reference implementation kept for testing and benchmarks.
enum class Exec { Serial, Parallel };

// Eigenvalues of a symmetric matrix by cyclic Jacobi rotations, ascending.
// Throws invalid_argument if M is asymmetric beyond sym_tol.
Spectrum sym_eigenvalues(const Matrix& M, double sym_tol = 1e-10,
                         Exec exec = Exec::Parallel);

// Second-smallest / largest eigenvalue of a Laplacian. Both validate the
// input (zero row sums, PSD within tol) and throw invalid_argument otherwise.
double lambda2(const Matrix& L, double tol = 1e-8);
double lambda_max(const Matrix& L, double tol = 1e-8);

// SLEM of the weight matrix I - L: largest |1 - lambda| over nonzero modes.
// Throws degenerate_input if L is disconnected (lambda2 <= tol).
double slem_of_weight_matrix(const Matrix& L, double tol = 1e-8);

// Multiplicity-aware multiset containment: does every value of b match a
// distinct value of a within tol?
bool spectrum_contains(const Spectrum& a, const Spectrum& b, double tol);

// Second-smallest Laplacian eigenvalue of a nonnegatively weighted graph by
// Lanczos iteration on the edge list, for graphs too large for the dense
// routine. Runs from two start vectors and keeps the smaller estimate.
double lambda2_lanczos(const WeightedGraph& g, const WeightVector& w,
                       int max_steps = 200);

}  // namespace qcon
