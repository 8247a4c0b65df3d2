#pragma once

// Dense double-precision vectors and row-major matrices, sized for
// desk-scale recurrent models. Plain loops; no external BLAS.

#include <cassert>
#include <cmath>
#include <cstddef>
#include <vector>

namespace xmorph {

using dvec = std::vector<double>;

struct matrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  dvec a;

  matrix() = default;
  matrix(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c, 0.0) {}

  double& operator()(std::size_t r, std::size_t c) { return a[r * cols + c]; }
  double operator()(std::size_t r, std::size_t c) const { return a[r * cols + c]; }
  double* row(std::size_t r) { return a.data() + r * cols; }
  const double* row(std::size_t r) const { return a.data() + r * cols; }
  std::size_t size() const { return a.size(); }
};

/// y += W x
inline void matvec_acc(const matrix& w, const double* x, double* y) {
  for (std::size_t r = 0; r < w.rows; ++r) {
    const double* wr = w.row(r);
    double sum = 0.0;
    for (std::size_t c = 0; c < w.cols; ++c) sum += wr[c] * x[c];
    y[r] += sum;
  }
}

/// y += W^T x
inline void matvec_t_acc(const matrix& w, const double* x, double* y) {
  for (std::size_t r = 0; r < w.rows; ++r) {
    const double* wr = w.row(r);
    const double xr = x[r];
    if (xr == 0.0) continue;
    for (std::size_t c = 0; c < w.cols; ++c) y[c] += wr[c] * xr;
  }
}

/// W += a b^T
inline void outer_acc(matrix& w, const double* a, const double* b) {
  for (std::size_t r = 0; r < w.rows; ++r) {
    double* wr = w.row(r);
    const double ar = a[r];
    if (ar == 0.0) continue;
    for (std::size_t c = 0; c < w.cols; ++c) wr[c] += ar * b[c];
  }
}

inline double sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

/// In-place softmax with max subtraction.
inline void softmax_inplace(double* x, std::size_t n) {
  double mx = x[0];
  for (std::size_t i = 1; i < n; ++i) mx = std::max(mx, x[i]);
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    x[i] = std::exp(x[i] - mx);
    sum += x[i];
  }
  for (std::size_t i = 0; i < n; ++i) x[i] /= sum;
}

inline double dot(const double* a, const double* b, std::size_t n) {
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) sum += a[i] * b[i];
  return sum;
}

}  // namespace xmorph
