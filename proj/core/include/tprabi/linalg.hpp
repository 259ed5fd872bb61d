#pragma once
#include <complex>
#include <cstddef>
#include <vector>

// Small dense linear-algebra kernels used by the solver. Everything here is
// self-contained: column-major storage is avoided, matrices are row-major
// square blocks owned by a flat vector.

namespace tprabi::linalg {

struct DenseMatrix {
  int n = 0;             // square dimension
  std::vector<double> a; // row-major, size n*n

  DenseMatrix() = default;
  explicit DenseMatrix(int dim) : n(dim), a(static_cast<std::size_t>(dim) * dim, 0.0) {}

  double& operator()(int i, int j) { return a[static_cast<std::size_t>(i) * n + j]; }
  double operator()(int i, int j) const { return a[static_cast<std::size_t>(i) * n + j]; }
};

struct SymmetricEigen {
  std::vector<double> values; // ascending
  DenseMatrix vectors;        // column k is the eigenvector for values[k]; empty if not requested
};

// Cyclic Jacobi rotations for a symmetric matrix. Sweeps until the off-diagonal
// Frobenius norm drops below 1e-12 * ||A||_F. Throws std::runtime_error if the
// sweep cap is hit (does not happen for the sizes used here).
SymmetricEigen jacobi_symmetric_eigen(DenseMatrix a, bool want_vectors);

// Eigenvalues of a general real matrix: balance, Householder reduction to
// Hessenberg form, then Francis double-shift QR. Order of the returned values
// follows the deflation order, sorted by real part before returning.
std::vector<std::complex<double>> qr_nonsymmetric_eigen(DenseMatrix a);

// ln Gamma(x) for x > 0, Lanczos approximation (g = 7, 9 terms).
// Relative error below 1e-14 over the range we use.
double log_gamma(double x);

// ln(n!) via log_gamma; n >= 0.
double log_factorial(int n);

} // namespace tprabi::linalg
