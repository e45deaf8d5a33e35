#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "qcon/graph.hpp"
#include "qcon/spectra.hpp"

namespace qcon {

using cplx = std::complex<double>;

// Dense square complex matrix (row-major).
class CMatrix {
 public:
  CMatrix() = default;
  explicit CMatrix(int n) : n_(n), a_(static_cast<std::size_t>(n) * n) {
    if (n < 1) throw invalid_argument("CMatrix: dimension must be positive");
  }
  int n() const { return n_; }
  cplx& operator()(int i, int j) { return a_[static_cast<std::size_t>(i) * n_ + j]; }
  const cplx& operator()(int i, int j) const {
    return a_[static_cast<std::size_t>(i) * n_ + j];
  }
  cplx* data() { return a_.data(); }
  const cplx* data() const { return a_.data(); }

 private:
  int n_ = 0;
  std::vector<cplx> a_;
};

// State of N qudits of local dimension d; m is d^N x d^N.
struct DensityMatrix {
  int d = 0;
  int N = 0;
  CMatrix m;
};

double trace_real(const CMatrix& m);
double hermiticity_error(const CMatrix& m);  // max |m - m^dagger| entry

// Permutation unitary exchanging tensor factors j and k (1-based).
CMatrix swap_unitary(int j, int k, int d, int N);

// One consensus step: rho + sum_e w_e (U_e rho U_e^dagger - rho).
// Requires w >= 0 and total weight <= 1 (CPTP) unless unsafe is set.
DensityMatrix step(const DensityMatrix& rho, const WeightedGraph& base,
                   const WeightVector& w, bool unsafe = false,
                   Exec exec = Exec::Parallel);

// (1/N!) sum over all permutation unitaries of U rho U^dagger. Guarded N <= 7.
DensityMatrix consensus_state(const DensityMatrix& rho0);

struct Trajectory {
  std::vector<double> distances;  // ||rho_t - rho*||_F for t = 0..T
  double rate_estimate = 0;       // geometric mean of late ratios
};

Trajectory simulate(const DensityMatrix& rho0, const WeightedGraph& base,
                    const WeightVector& w, int T, bool unsafe = false);

// Hermitian orthogonal basis of d x d matrices: identity plus the d^2 - 1
// traceless generalized Gell-Mann matrices, tr(l_a l_b) = 2 delta_ab (a,b >= 1).
struct GellMannBasis {
  int d = 0;
  std::vector<CMatrix> el;
};

GellMannBasis gell_mann_basis(int d);

// Real coefficient tensor of rho in the product basis, indexed by the
// multi-index (mu_1..mu_N) flattened base-d^2; normalized so coeffs[0] = 1
// for a unit-trace state.
std::vector<double> decompose(const DensityMatrix& rho, const GellMannBasis& basis);
DensityMatrix recompose(const std::vector<double>& coeffs, const GellMannBasis& basis,
                        int N);

struct ComponentDynamicsReport {
  int trials = 0;
  double max_deviation = 0;
  bool pass = false;
};

// Check that decomposing step(rho) equals the index-swap update applied to
// decompose(rho), over `trials` random states.
ComponentDynamicsReport verify_component_dynamics(const WeightedGraph& base,
                                                  const WeightVector& w, int d,
                                                  int trials, std::uint64_t seed,
                                                  double tol = 1e-10);

DensityMatrix random_density_matrix(int d, int N, std::uint64_t seed);

// Eigenvalues of a Hermitian matrix, ascending (independent of the
// real-symmetric routine in spectra).
std::vector<double> hermitian_eigenvalues(const CMatrix& m, double tol = 1e-10);

}  // namespace qcon
