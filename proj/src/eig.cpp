// SPDX-License-Identifier: Apache-2.0
//
// Dense complex Hermitian eigensolver: Householder reduction to real
// symmetric tridiagonal form, then implicit QL with Wilkinson-style shifts.
// Generalized pencils (A, M) are reduced through the Cholesky factor of M.
// Everything is deterministic: no randomization, fixed deflation order,
// stable eigenvalue sort, fixed phase convention for eigenvectors.

#include "specfilter/eig.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "specfilter/kernels.hpp"

namespace specfilter {

namespace {

constexpr double kHermTol = 1e-12;
constexpr int kMaxSweepsPerEigenvalue = 64;

std::string fmt_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.3e", v);
  return buf;
}

}  // namespace

HermitianMatrix::HermitianMatrix(Matrix m) : m_(std::move(m)) {
  if (m_.rows() != m_.cols() || m_.rows() == 0)
    throw Error("HermitianMatrix: matrix must be square and non-empty");
  const std::size_t n = m_.rows();
  double scale = max_abs(m_);
  if (scale == 0.0) scale = 1.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      const cplx upper = m_(i, j);
      const cplx lower = m_(j, i);
      if (std::abs(upper - std::conj(lower)) > kHermTol * scale)
        throw Error("HermitianMatrix: input is not Hermitian at (" + std::to_string(i) +
                    "," + std::to_string(j) + ")");
      const cplx sym = 0.5 * (upper + std::conj(lower));
      m_(i, j) = sym;
      m_(j, i) = std::conj(sym);
    }
    m_(i, i) = cplx(m_(i, i).real(), 0.0);
  }
}

Matrix cholesky(const HermitianMatrix& m) {
  const std::size_t n = m.dim();
  const auto& k = kernels::active();
  Matrix L(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      const cplx s = k.dotc(L.row(j), L.row(i), j);
      L(i, j) = (m(i, j) - s) / L(j, j).real();
    }
    const cplx diagdot = k.dotc(L.row(i), L.row(i), i);
    const double t = m(i, i).real() - diagdot.real();
    if (!(t > 0.0))
      throw Error("mass matrix not positive definite (pivot " + std::to_string(i) + ")");
    L(i, i) = std::sqrt(t);
  }
  return L;
}

void solve_adjoint_lower_right_inplace(const Matrix& L, Matrix& x) {
  const std::size_t n = L.rows();
  if (x.cols() != n) throw Error("solve_adjoint_lower_right: dimension mismatch");
  const auto& ker = kernels::active();
  for (std::size_t r = 0; r < x.rows(); ++r) {
    cplx* xr = x.row(r);
    for (std::size_t k = 0; k < n; ++k) {
      const cplx s = ker.dotc(L.row(k), xr, k);
      xr[k] = (xr[k] - s) / std::conj(L(k, k));
    }
  }
}

void solve_lower_left_inplace(const Matrix& L, Matrix& x) {
  const std::size_t n = L.rows();
  if (x.rows() != n) throw Error("solve_lower_left: dimension mismatch");
  const auto& ker = kernels::active();
  Matrix xt = transpose(x);
  for (std::size_t r = 0; r < xt.rows(); ++r) {
    cplx* xr = xt.row(r);
    for (std::size_t k = 0; k < n; ++k) {
      const cplx s = ker.dotu(L.row(k), xr, k);
      xr[k] = (xr[k] - s) / L(k, k);
    }
  }
  x = transpose(xt);
}

void solve_adjoint_lower_left_inplace(const Matrix& L, Matrix& x) {
  const std::size_t n = L.rows();
  if (x.rows() != n) throw Error("solve_adjoint_lower_left: dimension mismatch");
  const auto& ker = kernels::active();
  const Matrix Lh = adjoint(L);  // upper triangular, rows contiguous
  Matrix xt = transpose(x);
  for (std::size_t r = 0; r < xt.rows(); ++r) {
    cplx* xr = xt.row(r);
    for (std::size_t k = n; k-- > 0;) {
      const cplx s = ker.dotu(Lh.row(k) + (k + 1), xr + (k + 1), n - 1 - k);
      xr[k] = (xr[k] - s) / Lh(k, k);
    }
  }
  x = transpose(xt);
}

namespace {

// State after Householder reduction: input = q * tridiag(d, e) * adjoint(q)
// with real d, e (e[i] couples d[i] and d[i+1]).
struct TridiagForm {
  std::vector<double> d;
  std::vector<double> e;
  Matrix q;
};

TridiagForm householder_tridiagonalize(const Matrix& h) {
  const std::size_t n = h.rows();
  const auto& ker = kernels::active();
  Matrix w = h;
  std::vector<std::vector<cplx>> reflectors(n);
  std::vector<double> taus(n, 0.0);

  for (std::size_t k = 0; k + 2 < n; ++k) {
    const std::size_t m = n - k - 1;
    // Column below the diagonal, read through the (conjugated) row.
    std::vector<cplx> x(m);
    for (std::size_t j = 0; j < m; ++j) x[j] = std::conj(w(k, k + 1 + j));
    double sigma2 = 0.0;
    for (const cplx& v : x) sigma2 += std::norm(v);
    const double sigma = std::sqrt(sigma2);
    if (sigma == 0.0) continue;  // column already reduced

    const cplx x0 = x[0];
    const cplx phase = x0 == cplx(0.0, 0.0) ? cplx(1.0, 0.0) : x0 / std::abs(x0);
    const cplx alpha = -phase * sigma;

    std::vector<cplx> v = x;
    v[0] -= alpha;
    double vn2 = 0.0;
    for (const cplx& t : v) vn2 += std::norm(t);
    const double tau = 2.0 / vn2;

    // p = tau * B v over the trailing block B = w[k+1.., k+1..]
    std::vector<cplx> p(m);
    for (std::size_t i = 0; i < m; ++i)
      p[i] = tau * ker.dotu(w.row(k + 1 + i) + (k + 1), v.data(), m);
    const cplx kappa = 0.5 * tau * ker.dotc(v.data(), p.data(), m);
    std::vector<cplx> wv = p;
    ker.axpy(-kappa, v.data(), wv.data(), m);

    // B <- B - v wv* - wv v*
    for (std::size_t i = 0; i < m; ++i) {
      cplx* row = w.row(k + 1 + i) + (k + 1);
      ker.axpy_conj(-v[i], wv.data(), row, m);
      ker.axpy_conj(-wv[i], v.data(), row, m);
    }

    w(k + 1, k) = alpha;
    w(k, k + 1) = std::conj(alpha);
    for (std::size_t j = k + 2; j < n; ++j) {
      w(j, k) = 0.0;
      w(k, j) = 0.0;
    }
    reflectors[k] = std::move(v);
    taus[k] = tau;
  }

  // Backward accumulation of q = H_0 H_1 ... ; before applying H_k, rows
  // > k of q vanish on columns <= k, so updates stay in the trailing block.
  Matrix q = Matrix::identity(n);
  for (std::size_t k = n; k-- > 0;) {
    if (taus[k] == 0.0) continue;
    const std::size_t m = n - k - 1;
    const std::vector<cplx>& v = reflectors[k];
    std::vector<cplx> s(m, cplx(0.0, 0.0));
    for (std::size_t r = 0; r < m; ++r)
      ker.axpy(std::conj(v[r]), q.row(k + 1 + r) + (k + 1), s.data(), m);
    for (std::size_t r = 0; r < m; ++r)
      ker.axpy(-taus[k] * v[r], s.data(), q.row(k + 1 + r) + (k + 1), m);
  }

  // Subdiagonal phases are rotated away: with D the cumulative phase
  // diagonal, adjoint(D) T D has subdiagonal |t|, and q absorbs D.
  TridiagForm out;
  out.d.resize(n);
  out.e.assign(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) out.d[i] = w(i, i).real();
  std::vector<cplx> colphase(n, cplx(1.0, 0.0));
  cplx run(1.0, 0.0);
  for (std::size_t i = 1; i < n; ++i) {
    const cplx t = w(i, i - 1);
    const double a = std::abs(t);
    if (a != 0.0) run *= t / a;
    colphase[i] = run;
    out.e[i - 1] = a;
  }
  for (std::size_t r = 0; r < n; ++r) {
    cplx* row = q.row(r);
    for (std::size_t i = 1; i < n; ++i) row[i] *= colphase[i];
  }
  out.q = std::move(q);
  return out;
}

// Implicit QL with shifts on (d, e); rotations are accumulated into the
// rows of vt (row j of vt is eigenvector candidate j).
void tqli(std::vector<double>& d, std::vector<double>& e, Matrix& vt) {
  const std::size_t n = d.size();
  if (n <= 1) return;
  const auto& ker = kernels::active();
  const double eps = std::numeric_limits<double>::epsilon();
  const std::size_t cols = vt.cols();

  // Deflation uses the relative test plus an absolute floor scaled to the
  // largest row seen so far; without the floor, blocks of exact-zero
  // eigenvalues (rank-deficient inputs) stall below the relative threshold.
  double floor_tst = 0.0;
  for (std::size_t l = 0; l < n; ++l) {
    floor_tst = std::max(floor_tst, eps * (std::abs(d[l]) + std::abs(e[l])));
    int iter = 0;
    std::size_t m;
    do {
      for (m = l; m + 1 < n; ++m) {
        const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
        if (std::abs(e[m]) <= eps * dd + floor_tst) break;
      }
      if (m != l) {
        if (++iter > kMaxSweepsPerEigenvalue) {
          double rem = 0.0;
          for (std::size_t i = 0; i + 1 < n; ++i) rem = std::max(rem, std::abs(e[i]));
          throw Error("hermitian_eig: QL iteration did not converge (off-diagonal norm " +
                      fmt_double(rem) + ")");
        }
        double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
        double r = std::hypot(g, 1.0);
        g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
        double s = 1.0, c = 1.0, p = 0.0;
        bool underflow = false;
        for (int i = static_cast<int>(m) - 1; i >= static_cast<int>(l); --i) {
          double f = s * e[i];
          const double b = c * e[i];
          r = std::hypot(f, g);
          e[i + 1] = r;
          if (r == 0.0) {
            d[i + 1] -= p;
            e[m] = 0.0;
            underflow = true;
            break;
          }
          s = f / r;
          c = g / r;
          g = d[i + 1] - p;
          r = (d[i] - g) * s + 2.0 * c * b;
          p = s * r;
          d[i + 1] = g + p;
          g = c * r - b;
          ker.rot(c, s, vt.row(i), vt.row(i + 1), cols);
        }
        if (underflow) continue;
        d[l] -= p;
        e[l] = g;
        e[m] = 0.0;
      }
    } while (m != l);
  }
}

// Scale each row so its component of largest modulus (first such index)
// is real and positive.
void normalize_row_phases(Matrix& vt) {
  for (std::size_t r = 0; r < vt.rows(); ++r) {
    cplx* row = vt.row(r);
    std::size_t imax = 0;
    double amax = -1.0;
    for (std::size_t j = 0; j < vt.cols(); ++j) {
      const double a = std::abs(row[j]);
      if (a > amax) {
        amax = a;
        imax = j;
      }
    }
    if (amax <= 0.0) continue;
    const cplx phase = std::conj(row[imax]) / amax;
    for (std::size_t j = 0; j < vt.cols(); ++j) row[j] *= phase;
  }
}

// Shared core returning eigenvectors in rows of vt, sorted ascending.
void eig_core(const HermitianMatrix& h, std::vector<double>& values, Matrix& vt) {
  const std::size_t n = h.dim();
  TridiagForm tf = householder_tridiagonalize(h.matrix());
  vt = transpose(tf.q);
  tqli(tf.d, tf.e, vt);

  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(),
                   [&](std::size_t a, std::size_t b) { return tf.d[a] < tf.d[b]; });

  values.resize(n);
  Matrix sorted(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    values[j] = tf.d[idx[j]];
    const cplx* src = vt.row(idx[j]);
    std::copy(src, src + n, sorted.row(j));
  }
  vt = std::move(sorted);
}

}  // namespace

EigDecomposition hermitian_eig(const HermitianMatrix& h, double tol) {
  if (!(tol > 0.0)) throw Error("hermitian_eig: tol must be positive");
  EigDecomposition out;
  Matrix vt;
  eig_core(h, out.values, vt);
  normalize_row_phases(vt);
  out.vectors = transpose(vt);
  return out;
}

EigDecomposition generalized_eig(const HermitianMatrix& a, const HermitianMatrix& m,
                                 double tol) {
  if (a.dim() != m.dim()) throw Error("generalized_eig: dimension mismatch");
  if (!(tol > 0.0)) throw Error("generalized_eig: tol must be positive");
  const Matrix L = cholesky(m);

  Matrix b = a.matrix();
  solve_adjoint_lower_right_inplace(L, b);  // A L^-*
  solve_lower_left_inplace(L, b);           // L^-1 A L^-*
  const HermitianMatrix bh(std::move(b));   // symmetrizes roundoff

  EigDecomposition out;
  Matrix vt;
  eig_core(bh, out.values, vt);

  // Map back: u = L^-* v. Rows of vt are the v's; solve along rows of the
  // transposed system, then fix phases on the final vectors.
  Matrix x = transpose(vt);
  solve_adjoint_lower_left_inplace(L, x);
  Matrix xt = transpose(x);
  normalize_row_phases(xt);
  out.vectors = transpose(xt);
  return out;
}

}  // namespace specfilter
