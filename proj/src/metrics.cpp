// SPDX-License-Identifier: Apache-2.0

#include "specfilter/metrics.hpp"

#include <algorithm>
#include <cmath>

namespace specfilter {

double hausdorff_distance(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.empty() || y.empty()) throw Error("Hausdorff undefined for empty set");
  auto one_sided = [](const std::vector<double>& a, const std::vector<double>& b) {
    double worst = 0.0;
    for (double p : a) {
      double best = std::abs(p - b.front());
      for (double q : b) best = std::min(best, std::abs(p - q));
      worst = std::max(worst, best);
    }
    return worst;
  };
  return std::max(one_sided(x, y), one_sided(y, x));
}

namespace {

// g-orthonormalize the columns of basis via the Cholesky factor of its Gram.
Matrix orthonormalize(const Matrix& basis, const HermitianMatrix& g, const char* which) {
  if (basis.cols() == 0) throw Error(std::string("subspace_gap: rank-deficient ") + which);
  const Matrix gb = mul(g.matrix(), basis);
  Matrix gram = mul_adjoint_left(basis, gb);
  Matrix r;
  try {
    r = cholesky(HermitianMatrix(std::move(gram)));
  } catch (const Error&) {
    throw Error(std::string("subspace_gap: rank-deficient ") + which);
  }
  Matrix out = basis;
  solve_adjoint_lower_right_inplace(r, out);
  return out;
}

}  // namespace

double subspace_gap(const Matrix& u, const Matrix& v, const HermitianMatrix& g) {
  if (u.rows() != g.dim() || v.rows() != g.dim())
    throw Error("subspace_gap: basis/Gram dimension mismatch");
  const Matrix uo = orthonormalize(u, g, "U");
  const Matrix vo = orthonormalize(v, g, "V");
  // For unit x in span U: dist(x, V)^2 = 1 - |adjoint(Vo) G x|^2, so the
  // squared gap is 1 - lambda_min(adjoint(W) W) with W = adjoint(Vo) G Uo.
  const Matrix w = mul_adjoint_left(vo, mul(g.matrix(), uo));
  Matrix ww = mul_adjoint_left(w, w);
  const EigDecomposition dec = hermitian_eig(HermitianMatrix(std::move(ww)));
  const double lam = std::clamp(dec.values.front(), 0.0, 1.0);
  return std::sqrt(1.0 - lam);
}

}  // namespace specfilter
