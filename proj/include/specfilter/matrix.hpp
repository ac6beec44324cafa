// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace specfilter {

using cplx = std::complex<double>;

class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Dense row-major complex matrix. Deliberately minimal: the library needs
// value semantics, contiguous rows for the kernels, and a handful of
// products, nothing more.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols, cplx(0.0, 0.0)) {}

  static Matrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  cplx& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const cplx& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  cplx* row(std::size_t i) { return data_.data() + i * cols_; }
  const cplx* row(std::size_t i) const { return data_.data() + i * cols_; }

  cplx* data() { return data_.data(); }
  const cplx* data() const { return data_.data(); }

  bool is_real(double tol = 0.0) const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<cplx> data_;
};

Matrix transpose(const Matrix& a);
Matrix adjoint(const Matrix& a);  // conjugate transpose

// c = a*b
Matrix mul(const Matrix& a, const Matrix& b);
// c = adjoint(a)*b without forming the adjoint
Matrix mul_adjoint_left(const Matrix& a, const Matrix& b);

Matrix operator+(const Matrix& a, const Matrix& b);
Matrix operator-(const Matrix& a, const Matrix& b);
Matrix operator*(cplx s, const Matrix& a);

double frobenius_norm(const Matrix& a);
double max_abs(const Matrix& a);

// Columns js (in order) of a.
Matrix select_columns(const Matrix& a, const std::vector<std::size_t>& js);

}  // namespace specfilter
