// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <vector>

#include "specfilter/matrix.hpp"

namespace specfilter {

// Square matrix with the Hermitian constraint enforced at construction:
// the input must satisfy H = H* up to 1e-12 relative tolerance, after which
// it is replaced by (H + H*)/2 and the diagonal imaginary parts are zeroed.
class HermitianMatrix {
 public:
  explicit HermitianMatrix(Matrix m);

  std::size_t dim() const { return m_.rows(); }
  const Matrix& matrix() const { return m_; }
  const cplx& operator()(std::size_t i, std::size_t j) const { return m_(i, j); }

 private:
  Matrix m_;
};

// values ascending; column j of vectors is the eigenvector for values[j].
// For hermitian_eig the vectors are orthonormal in the Euclidean inner
// product, for generalized_eig in the M-inner product.
struct EigDecomposition {
  std::vector<double> values;
  Matrix vectors;
};

inline constexpr double kDefaultEigTol = 1e-10;

// Full eigendecomposition by Householder tridiagonalization and implicit QL
// with Wilkinson-style shifts. Deterministic: fixed deflation order, stable
// sort of eigenvalues, and each eigenvector is scaled so its component of
// largest modulus (first such index) is real and positive.
// Throws Error on non-convergence, reporting the residual off-diagonal norm.
EigDecomposition hermitian_eig(const HermitianMatrix& h, double tol = kDefaultEigTol);

// Lower-triangular R with R*adjoint(R) = m. Throws Error("mass matrix not
// positive definite (pivot k)") on a non-positive pivot.
Matrix cholesky(const HermitianMatrix& m);

// Pairs (mu, u) with A u = mu M u, vectors M-orthonormal, values ascending.
EigDecomposition generalized_eig(const HermitianMatrix& a, const HermitianMatrix& m,
                                 double tol = kDefaultEigTol);

// Triangular solves against a lower-triangular factor L. All variants keep
// the row access contiguous (transposing internally where needed).
void solve_lower_left_inplace(const Matrix& L, Matrix& x);          // x <- L^-1 x
void solve_adjoint_lower_left_inplace(const Matrix& L, Matrix& x);  // x <- L^-* x
void solve_adjoint_lower_right_inplace(const Matrix& L, Matrix& x); // x <- x L^-*

}  // namespace specfilter
