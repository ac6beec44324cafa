// SPDX-License-Identifier: Apache-2.0
//
// AVX2 kernels. This translation unit is compiled with -mavx2 -mfma; it is
// only entered after a runtime CPU feature check (see avx2_ops below).
//
// The elementwise kernels (axpy, axpy_conj, rot) deliberately avoid FMA and
// replicate the scalar backend's operation order, so their results are
// bit-identical to the scalar reference. The dot reductions use FMA and
// lane-parallel accumulators, so they agree with scalar only up to roundoff.

#include "specfilter/kernels.hpp"

#if defined(__AVX2__) && defined(__FMA__)
#include <immintrin.h>

namespace specfilter::kernels {

namespace {

inline double hsum(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  lo = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(lo, _mm_unpackhi_pd(lo, lo)));
}

// Lane sign masks used to split interleaved (re,im) products.
const __m256d kSignEven = _mm256_set_pd(-0.0, 0.0, -0.0, 0.0);  // flips lanes 1,3

cplx avx2_dotu(const cplx* x, const cplx* y, std::size_t n) {
  const double* xd = reinterpret_cast<const double*>(x);
  const double* yd = reinterpret_cast<const double*>(y);
  __m256d acc1a = _mm256_setzero_pd(), acc1b = _mm256_setzero_pd();
  __m256d acc2a = _mm256_setzero_pd(), acc2b = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d vx0 = _mm256_loadu_pd(xd + 2 * i);
    __m256d vy0 = _mm256_loadu_pd(yd + 2 * i);
    __m256d vx1 = _mm256_loadu_pd(xd + 2 * i + 4);
    __m256d vy1 = _mm256_loadu_pd(yd + 2 * i + 4);
    acc1a = _mm256_fmadd_pd(vx0, vy0, acc1a);
    acc1b = _mm256_fmadd_pd(vx1, vy1, acc1b);
    acc2a = _mm256_fmadd_pd(vx0, _mm256_permute_pd(vy0, 0x5), acc2a);
    acc2b = _mm256_fmadd_pd(vx1, _mm256_permute_pd(vy1, 0x5), acc2b);
  }
  // re = sum over (xr*yr - xi*yi); im = sum over (xr*yi + xi*yr)
  __m256d acc1 = _mm256_add_pd(acc1a, acc1b);
  __m256d acc2 = _mm256_add_pd(acc2a, acc2b);
  double re = hsum(_mm256_xor_pd(acc1, kSignEven));
  double im = hsum(acc2);
  for (; i < n; ++i) {
    const double xr = x[i].real(), xi = x[i].imag();
    const double yr = y[i].real(), yi = y[i].imag();
    re += xr * yr - xi * yi;
    im += xr * yi + xi * yr;
  }
  return {re, im};
}

cplx avx2_dotc(const cplx* x, const cplx* y, std::size_t n) {
  const double* xd = reinterpret_cast<const double*>(x);
  const double* yd = reinterpret_cast<const double*>(y);
  __m256d acc1a = _mm256_setzero_pd(), acc1b = _mm256_setzero_pd();
  __m256d acc2a = _mm256_setzero_pd(), acc2b = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d vx0 = _mm256_loadu_pd(xd + 2 * i);
    __m256d vy0 = _mm256_loadu_pd(yd + 2 * i);
    __m256d vx1 = _mm256_loadu_pd(xd + 2 * i + 4);
    __m256d vy1 = _mm256_loadu_pd(yd + 2 * i + 4);
    acc1a = _mm256_fmadd_pd(vx0, vy0, acc1a);
    acc1b = _mm256_fmadd_pd(vx1, vy1, acc1b);
    acc2a = _mm256_fmadd_pd(vx0, _mm256_permute_pd(vy0, 0x5), acc2a);
    acc2b = _mm256_fmadd_pd(vx1, _mm256_permute_pd(vy1, 0x5), acc2b);
  }
  // re = sum over (xr*yr + xi*yi); im = sum over (xr*yi - xi*yr)
  __m256d acc1 = _mm256_add_pd(acc1a, acc1b);
  __m256d acc2 = _mm256_add_pd(acc2a, acc2b);
  double re = hsum(acc1);
  double im = hsum(_mm256_xor_pd(acc2, kSignEven));
  for (; i < n; ++i) {
    const double xr = x[i].real(), xi = x[i].imag();
    const double yr = y[i].real(), yi = y[i].imag();
    re += xr * yr + xi * yi;
    im += xr * yi - xi * yr;
  }
  return {re, im};
}

void avx2_axpy(cplx a, const cplx* x, cplx* y, std::size_t n) {
  const double ar = a.real(), ai = a.imag();
  const double* xd = reinterpret_cast<const double*>(x);
  double* yd = reinterpret_cast<double*>(y);
  const __m256d var = _mm256_set1_pd(ar);
  const __m256d vai = _mm256_set_pd(ai, -ai, ai, -ai);  // (-ai, ai, -ai, ai)
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    __m256d vx = _mm256_loadu_pd(xd + 2 * i);
    __m256d vy = _mm256_loadu_pd(yd + 2 * i);
    __m256d t = _mm256_add_pd(_mm256_mul_pd(var, vx),
                              _mm256_mul_pd(vai, _mm256_permute_pd(vx, 0x5)));
    _mm256_storeu_pd(yd + 2 * i, _mm256_add_pd(vy, t));
  }
  for (; i < n; ++i) {
    const double xr = x[i].real(), xi = x[i].imag();
    const double tr = ar * xr - ai * xi;
    const double ti = ar * xi + ai * xr;
    y[i] = {y[i].real() + tr, y[i].imag() + ti};
  }
}

void avx2_axpy_conj(cplx a, const cplx* x, cplx* y, std::size_t n) {
  const double ar = a.real(), ai = a.imag();
  const double* xd = reinterpret_cast<const double*>(x);
  double* yd = reinterpret_cast<double*>(y);
  const __m256d var = _mm256_set_pd(-ar, ar, -ar, ar);  // (ar, -ar, ar, -ar)
  const __m256d vai = _mm256_set1_pd(ai);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    __m256d vx = _mm256_loadu_pd(xd + 2 * i);
    __m256d vy = _mm256_loadu_pd(yd + 2 * i);
    __m256d t = _mm256_add_pd(_mm256_mul_pd(var, vx),
                              _mm256_mul_pd(vai, _mm256_permute_pd(vx, 0x5)));
    _mm256_storeu_pd(yd + 2 * i, _mm256_add_pd(vy, t));
  }
  for (; i < n; ++i) {
    const double xr = x[i].real(), xi = x[i].imag();
    const double tr = ar * xr + ai * xi;
    const double ti = ai * xr - ar * xi;
    y[i] = {y[i].real() + tr, y[i].imag() + ti};
  }
}

void avx2_rot(double c, double s, cplx* x, cplx* y, std::size_t n) {
  double* xd = reinterpret_cast<double*>(x);
  double* yd = reinterpret_cast<double*>(y);
  const __m256d vc = _mm256_set1_pd(c);
  const __m256d vs = _mm256_set1_pd(s);
  const std::size_t m = 2 * n;
  std::size_t i = 0;
  for (; i + 4 <= m; i += 4) {
    __m256d vf = _mm256_loadu_pd(xd + i);
    __m256d vg = _mm256_loadu_pd(yd + i);
    _mm256_storeu_pd(xd + i, _mm256_sub_pd(_mm256_mul_pd(vc, vf), _mm256_mul_pd(vs, vg)));
    _mm256_storeu_pd(yd + i, _mm256_add_pd(_mm256_mul_pd(vs, vf), _mm256_mul_pd(vc, vg)));
  }
  for (; i < m; ++i) {
    const double f = xd[i];
    const double g = yd[i];
    xd[i] = c * f - s * g;
    yd[i] = s * f + c * g;
  }
}

}  // namespace

const Ops* avx2_ops() {
  static const bool supported =
      __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
  if (!supported) return nullptr;
  static const Ops ops = {"avx2",    avx2_dotu, avx2_dotc,
                          avx2_axpy, avx2_axpy_conj,
                          avx2_rot};
  return &ops;
}

}  // namespace specfilter::kernels

#else  // no AVX2 at compile time

namespace specfilter::kernels {
const Ops* avx2_ops() { return nullptr; }
}  // namespace specfilter::kernels

#endif
