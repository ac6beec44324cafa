// SPDX-License-Identifier: Apache-2.0
//
// Scalar reference kernels. The complex arithmetic is written out in real
// components with a fixed operation order; the SIMD backends mirror this
// order exactly for the elementwise kernels so that results are
// bit-identical (see kernels.hpp).

#include "specfilter/kernels.hpp"

namespace specfilter::kernels {

namespace {

cplx scalar_dotu(const cplx* x, const cplx* y, std::size_t n) {
  double re = 0.0, im = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double xr = x[i].real(), xi = x[i].imag();
    const double yr = y[i].real(), yi = y[i].imag();
    re += xr * yr - xi * yi;
    im += xr * yi + xi * yr;
  }
  return {re, im};
}

cplx scalar_dotc(const cplx* x, const cplx* y, std::size_t n) {
  double re = 0.0, im = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double xr = x[i].real(), xi = x[i].imag();
    const double yr = y[i].real(), yi = y[i].imag();
    re += xr * yr + xi * yi;
    im += xr * yi - xi * yr;
  }
  return {re, im};
}

void scalar_axpy(cplx a, const cplx* x, cplx* y, std::size_t n) {
  const double ar = a.real(), ai = a.imag();
  for (std::size_t i = 0; i < n; ++i) {
    const double xr = x[i].real(), xi = x[i].imag();
    const double tr = ar * xr - ai * xi;
    const double ti = ar * xi + ai * xr;
    y[i] = {y[i].real() + tr, y[i].imag() + ti};
  }
}

void scalar_axpy_conj(cplx a, const cplx* x, cplx* y, std::size_t n) {
  const double ar = a.real(), ai = a.imag();
  for (std::size_t i = 0; i < n; ++i) {
    const double xr = x[i].real(), xi = x[i].imag();
    const double tr = ar * xr + ai * xi;
    const double ti = ai * xr - ar * xi;
    y[i] = {y[i].real() + tr, y[i].imag() + ti};
  }
}

void scalar_rot(double c, double s, cplx* x, cplx* y, std::size_t n) {
  // Treat the complex arrays as 2n doubles; c and s are real.
  double* xd = reinterpret_cast<double*>(x);
  double* yd = reinterpret_cast<double*>(y);
  const std::size_t m = 2 * n;
  for (std::size_t i = 0; i < m; ++i) {
    const double f = xd[i];
    const double g = yd[i];
    xd[i] = c * f - s * g;
    yd[i] = s * f + c * g;
  }
}

}  // namespace

const Ops& scalar_ops() {
  static const Ops ops = {"scalar",     scalar_dotu, scalar_dotc,
                          scalar_axpy,  scalar_axpy_conj,
                          scalar_rot};
  return ops;
}

}  // namespace specfilter::kernels
