// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <complex>
#include <cstddef>
#include <string>

namespace specfilter::kernels {

using cplx = std::complex<double>;

// Dense inner-loop kernels. Every O(n^3) path in the library (Householder
// reduction, QL eigenvector accumulation, Cholesky, triangular solves,
// matrix products) is expressed in terms of these five operations, so a
// single dispatch table covers all hot loops.
//
// Contract between backends:
//   * axpy / axpy_conj / rot are elementwise and must produce bit-identical
//     results across backends (no FMA contraction, fixed operation order).
//   * dotu / dotc are reductions; backends may reassociate the sum, so they
//     agree only up to roundoff (~n*eps relative).
struct Ops {
  const char* name;

  // sum_i x[i]*y[i]
  cplx (*dotu)(const cplx* x, const cplx* y, std::size_t n);
  // sum_i conj(x[i])*y[i]
  cplx (*dotc)(const cplx* x, const cplx* y, std::size_t n);
  // y[i] += a*x[i]
  void (*axpy)(cplx a, const cplx* x, cplx* y, std::size_t n);
  // y[i] += a*conj(x[i])
  void (*axpy_conj)(cplx a, const cplx* x, cplx* y, std::size_t n);
  // plane rotation with real coefficients:
  //   x[i] <- c*x[i] - s*y[i]
  //   y[i] <- s*x_old[i] + c*y[i]
  void (*rot)(double c, double s, cplx* x, cplx* y, std::size_t n);
};

enum class Backend { Auto, Scalar, Avx2 };

// Always available; the reference implementation.
const Ops& scalar_ops();

// AVX2 implementation, or nullptr when not compiled in / not supported by
// the CPU at runtime.
const Ops* avx2_ops();

// Select the backend used by active(). Auto picks the best supported one.
// Honours the SPECFILTER_KERNELS environment variable ("scalar"/"avx2") on
// first use when no explicit choice was made.
void set_backend(Backend b);

const Ops& active();
std::string active_name();

}  // namespace specfilter::kernels
