#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "qcon/errors.hpp"

namespace qcon {

// Dense square matrix of doubles, row-major.  Small utility type: the
// library only ever works with square (mostly symmetric) matrices.
class Matrix {
 public:
  Matrix() = default;
  explicit Matrix(int n) : n_(n), a_(static_cast<std::size_t>(n) * n, 0.0) {
    if (n < 1) throw invalid_argument("Matrix: dimension must be positive");
  }

  int n() const { return n_; }

  double& operator()(int i, int j) { return a_[static_cast<std::size_t>(i) * n_ + j]; }
  double operator()(int i, int j) const { return a_[static_cast<std::size_t>(i) * n_ + j]; }

  double* data() { return a_.data(); }
  const double* data() const { return a_.data(); }

  double max_abs() const {
    double m = 0.0;
    for (double v : a_) m = std::max(m, std::fabs(v));
    return m;
  }

  double trace() const {
    double t = 0.0;
    for (int i = 0; i < n_; ++i) t += (*this)(i, i);
    return t;
  }

 private:
  int n_ = 0;
  std::vector<double> a_;
};

}  // namespace qcon
