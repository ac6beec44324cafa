// SPDX-License-Identifier: Apache-2.0

#include "specfilter/matrix.hpp"

#include <cmath>

#include "specfilter/kernels.hpp"

namespace specfilter {

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

bool Matrix::is_real(double tol) const {
  for (const cplx& v : data_)
    if (std::abs(v.imag()) > tol) return false;
  return true;
}

Matrix transpose(const Matrix& a) {
  Matrix t(a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) t(j, i) = a(i, j);
  return t;
}

Matrix adjoint(const Matrix& a) {
  Matrix t(a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) t(j, i) = std::conj(a(i, j));
  return t;
}

Matrix mul(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) throw Error("mul: dimension mismatch");
  const auto& k = kernels::active();
  Matrix c(a.rows(), b.cols());
  // Row-of-c accumulation keeps every access contiguous; summation order
  // over k is fixed, so results are reproducible.
  for (std::size_t i = 0; i < a.rows(); ++i) {
    cplx* ci = c.row(i);
    for (std::size_t l = 0; l < a.cols(); ++l) {
      const cplx s = a(i, l);
      if (s != cplx(0.0, 0.0)) k.axpy(s, b.row(l), ci, b.cols());
    }
  }
  return c;
}

Matrix mul_adjoint_left(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows()) throw Error("mul_adjoint_left: dimension mismatch");
  const auto& k = kernels::active();
  Matrix c(a.cols(), b.cols());
  for (std::size_t l = 0; l < a.rows(); ++l) {
    const cplx* bl = b.row(l);
    for (std::size_t i = 0; i < a.cols(); ++i) {
      const cplx s = std::conj(a(l, i));
      if (s != cplx(0.0, 0.0)) k.axpy(s, bl, c.row(i), b.cols());
    }
  }
  return c;
}

Matrix operator+(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw Error("operator+: shape mismatch");
  Matrix c = a;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) += b(i, j);
  return c;
}

Matrix operator-(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw Error("operator-: shape mismatch");
  Matrix c = a;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) -= b(i, j);
  return c;
}

Matrix operator*(cplx s, const Matrix& a) {
  Matrix c = a;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) *= s;
  return c;
}

double frobenius_norm(const Matrix& a) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) s += std::norm(a(i, j));
  return std::sqrt(s);
}

double max_abs(const Matrix& a) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) s = std::max(s, std::abs(a(i, j)));
  return s;
}

Matrix select_columns(const Matrix& a, const std::vector<std::size_t>& js) {
  Matrix c(a.rows(), js.size());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < js.size(); ++j) c(i, j) = a(i, js[j]);
  return c;
}

}  // namespace specfilter
