// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <vector>

#include "specfilter/eig.hpp"

namespace specfilter {

// Discretized form pair on a trial space: a(i,j) = form[basis_j, basis_i],
// m(i,j) = inner[basis_j, basis_i], so the eigenproblem reads A u = mu M u.
// M must be positive definite (checked by Cholesky at construction).
struct Pencil {
  Pencil(HermitianMatrix a_in, HermitianMatrix m_in, std::string label_in);

  HermitianMatrix a;
  HermitianMatrix m;
  std::string label;

  std::size_t dim() const { return a.dim(); }
};

struct Interval {
  double a;
  double b;
  Interval(double a_in, double b_in) : a(a_in), b(b_in) {
    if (!(a < b)) throw Error("Interval: requires a < b");
  }
  bool contains(double x) const { return a <= x && x <= b; }
};

// Eigenpairs of the pencil with eigenvalues inside a closed interval:
// mu ascending, column j of u the M-orthonormal eigenvector for mu[j].
struct GalerkinWindow {
  std::vector<double> mu;
  Matrix u;  // dim x d_n
  std::string parent;
  double delta_a = 0.0;
  double delta_b = 0.0;

  std::size_t dim_window() const { return mu.size(); }
  bool empty() const { return mu.empty(); }
};

// Full generalized decomposition of (A, M); the discrete spectrum of the
// form on this trial space.
EigDecomposition solve_galerkin(const Pencil& p);

// Pairs with a <= mu <= b (closed interval, exact comparison on the
// computed values). An empty window is a valid result.
GalerkinWindow spectral_window(const EigDecomposition& spec, const Pencil& p,
                               const Interval& delta);

// Gram matrix of the shifted form inner product on the trial space:
// A + (1 - m_shift) M. Requires m_shift <= min Galerkin eigenvalue
// (validated; otherwise the matrix could be indefinite).
HermitianMatrix a_gram(const Pencil& p, double m_shift);

}  // namespace specfilter
